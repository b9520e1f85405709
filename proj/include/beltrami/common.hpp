#pragma once

// Shared small types: parameter-domain geometry, form selectors, grids.

#include <string>

namespace beltrami {

// Which fundamental form a metric-dependent operator works with.
enum class FormKind { I, II, III };

inline const char* to_string(FormKind f) {
    switch (f) {
        case FormKind::I: return "I";
        case FormKind::II: return "II";
        case FormKind::III: return "III";
    }
    return "?";
}

// Which function family a type probe analyzes.
enum class FieldKind { position, normal };

inline const char* to_string(FieldKind f) {
    return f == FieldKind::position ? "position" : "normal";
}

struct Point2 {
    double u = 0, v = 0;
};

struct Interval {
    double lo = 0, hi = 0;
    double width() const { return hi - lo; }
    bool contains(double t) const { return t > lo && t < hi; }
};

struct DomainBox {
    Interval u, v;
    bool contains(double pu, double pv) const { return u.contains(pu) && v.contains(pv); }
};

struct GridSpec {
    int nu = 20, nv = 20;
};

// default tolerances shared across modules
constexpr double kDefaultEpsK = 1e-9;     // |K| threshold for II/III admissibility
constexpr double kDefaultEpsPar = 1e-9;   // parallel-offset admissibility
constexpr double kDefaultEpsId = 1e-8;    // identity-suite residual gate
constexpr double kDefaultEpsType = 1e-7;  // type-probe fit acceptance
constexpr double kDefaultEpsRoot = 1e-6;  // root separation / nullity threshold
constexpr double kDefaultCondMax = 1e10;  // design-matrix condition limit
constexpr double kRegularityFloor = 1e-10; // |x_/1 x x_/2| lower bound

} // namespace beltrami
