#pragma once

// E^3-valued jets and plain 3-vector helpers.

#include <array>
#include <cmath>

#include "jet.hpp"

namespace beltrami {

using Vec3 = std::array<double, 3>;
using Vec3Jet = std::array<Jet2, 3>;

inline Jet2 dot(const Vec3Jet& a, const Vec3Jet& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline Vec3Jet cross(const Vec3Jet& a, const Vec3Jet& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline Vec3Jet operator+(const Vec3Jet& a, const Vec3Jet& b) {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}

inline Vec3Jet operator-(const Vec3Jet& a, const Vec3Jet& b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

inline Vec3Jet operator*(const Vec3Jet& a, const Jet2& s) {
    return {a[0] * s, a[1] * s, a[2] * s};
}

inline Vec3Jet operator*(const Vec3Jet& a, double s) {
    return {a[0] * s, a[1] * s, a[2] * s};
}

inline Vec3Jet derive(const Vec3Jet& a, Var dir) {
    return {derive(a[0], dir), derive(a[1], dir), derive(a[2], dir)};
}

inline Vec3Jet truncated(const Vec3Jet& a, int order) {
    return {a[0].truncated(order), a[1].truncated(order), a[2].truncated(order)};
}

inline Vec3 values(const Vec3Jet& a) {
    return {a[0].value(), a[1].value(), a[2].value()};
}

// plain double 3-vector algebra (identity residuals work on values)
inline double dot(const Vec3& a, const Vec3& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

inline Vec3 operator+(const Vec3& a, const Vec3& b) {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}

inline Vec3 operator-(const Vec3& a, const Vec3& b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

inline Vec3 operator*(const Vec3& a, double s) { return {a[0] * s, a[1] * s, a[2] * s}; }

} // namespace beltrami
