#pragma once

// Jets-versus-finite-differences cross-validation: evaluates the fundamental
// data (g, b, e, n, H, K) through both the jet frame and the FD oracle at
// seeded random points and reports the worst relative deviation
//     rel(a, b) = |a - b| / max(1, |a|, |b|).
// The two routes share no differentiation code, so small deviations certify
// both pipelines at once.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "common.hpp"
#include "errors.hpp"
#include "geometry.hpp"
#include "oracle.hpp"
#include "surface.hpp"

namespace beltrami {

inline double rel_err(double a, double b) {
    return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

struct CrossEntry {
    Point2 point{};
    std::string quantity;
    double jet_value = 0.0;
    double fd_value = 0.0;
    double rel_error = 0.0;
};

struct CrossReport {
    std::string surface;
    int points = 0;
    double tolerance = 1e-5;
    std::uint64_t seed = 0;
    double max_rel_error = 0.0;
    std::string worst_quantity;
    Point2 worst_point{};
    bool pass = true;
    std::vector<CrossEntry> entries;
};

inline CrossReport cross_check(const SurfaceSpec& spec, int n_points = 20,
                               std::uint64_t seed = 7153, double tolerance = 1e-5,
                               const FdConfig& cfg = {}) {
    if (n_points < 1) throw BadParameter("cross_check: need at least one point");
    CrossReport rep;
    rep.surface = spec.selector();
    rep.tolerance = tolerance;
    rep.seed = seed;

    std::mt19937_64 rng(seed);
    auto unit = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

    int accepted = 0, attempts = 0;
    const int max_attempts = 64 * n_points;
    while (accepted < n_points && attempts < max_attempts) {
        ++attempts;
        // keep 10% margin on each side: FD stencils lose accuracy when they
        // have to shrink against the boundary
        Point2 p{spec.domain.u.lo + (0.1 + 0.8 * unit()) * spec.domain.u.width(),
                 spec.domain.v.lo + (0.1 + 0.8 * unit()) * spec.domain.v.width()};
        FrameData fr;
        FdCurvatures fd;
        try {
            fr = frame(spec, p, 3);
            fd = fd_curvatures(spec, p, cfg);
        } catch (const Error&) {
            continue; // irregular or out-of-stencil sample: draw another
        }
        ++accepted;

        auto push = [&](const std::string& q, double jet, double ref) {
            CrossEntry e{p, q, jet, ref, rel_err(jet, ref)};
            if (e.rel_error >= rep.max_rel_error) {
                rep.max_rel_error = e.rel_error;
                rep.worst_quantity = q;
                rep.worst_point = p;
            }
            rep.entries.push_back(std::move(e));
        };
        const Vec3 n_jet = values(fr.n);
        push("g11", fr.I.value(0, 0), fd.g11);
        push("g12", fr.I.value(0, 1), fd.g12);
        push("g22", fr.I.value(1, 1), fd.g22);
        push("b11", fr.II.value(0, 0), fd.b11);
        push("b12", fr.II.value(0, 1), fd.b12);
        push("b22", fr.II.value(1, 1), fd.b22);
        push("e11", fr.III.value(0, 0), fd.e11);
        push("e12", fr.III.value(0, 1), fd.e12);
        push("e22", fr.III.value(1, 1), fd.e22);
        push("H", fr.H.value(), fd.H);
        push("K", fr.K.value(), fd.K);
        push("n_x", n_jet[0], fd.n[0]);
        push("n_y", n_jet[1], fd.n[1]);
        push("n_z", n_jet[2], fd.n[2]);
    }
    if (accepted < n_points)
        throw TooFewSamples("cross_check: only " + std::to_string(accepted) + " of " +
                            std::to_string(n_points) + " requested points were usable");
    rep.points = accepted;
    rep.pass = rep.max_rel_error < tolerance;
    return rep;
}

} // namespace beltrami
