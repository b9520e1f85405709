#pragma once

// Independent numerical oracle: central finite differences with Richardson
// extrapolation, evaluated purely from order-0 surface values.  Nothing here
// touches jet arithmetic, so agreement between this module and the jet-based
// frame is a genuine cross-check of both.
//
// Step policy: the base step is h_scale * (interval width), halved per
// Richardson level.  Third and fourth derivatives get wider base steps (x20,
// x60): their central stencils amplify rounding noise as eps/h^d, and these
// multipliers balance truncation against cancellation in double precision.
// Near the domain boundary the step shrinks to fit; below a floor the stencil
// reports StencilOutOfDomain instead of returning garbage.

#include <array>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "common.hpp"
#include "errors.hpp"
#include "surface.hpp"
#include "vec.hpp"

namespace beltrami {

struct FdConfig {
    double h_scale = 1e-3;      // base step as a fraction of the interval width
    int levels = 4;             // Richardson refinement levels
    double shrink_floor = 1e-7; // minimum usable step, as a fraction of the width
};

struct FdValue {
    double value = 0.0;
    double error_estimate = 0.0; // gap between the last two Richardson diagonals
};

namespace detail {

inline double fd_step_multiplier(int d) {
    switch (d) {
        case 3: return 20.0;
        case 4: return 60.0;
        default: return 1.0;
    }
}

inline int fd_reach(int d) { return d >= 3 ? 2 : (d >= 1 ? 1 : 0); }

// central stencil for the d-th derivative (d in 0..4) at step h
inline double fd_stencil(const std::function<double(double)>& f, double x0, double h, int d) {
    switch (d) {
        case 0: return f(x0);
        case 1: return (f(x0 + h) - f(x0 - h)) / (2.0 * h);
        case 2: return (f(x0 + h) - 2.0 * f(x0) + f(x0 - h)) / (h * h);
        case 3:
            return (f(x0 + 2.0 * h) - 2.0 * f(x0 + h) + 2.0 * f(x0 - h) - f(x0 - 2.0 * h)) /
                   (2.0 * h * h * h);
        case 4:
            return (f(x0 + 2.0 * h) - 4.0 * f(x0 + h) + 6.0 * f(x0) - 4.0 * f(x0 - h) +
                    f(x0 - 2.0 * h)) /
                   (h * h * h * h);
        default: throw BadParameter("fd_stencil: derivative order must be 0..4");
    }
}

// largest admissible base step for direction x0 in dom, honoring stencil reach
inline double fd_fit_step(double requested, double x0, Interval dom, int d, double floor_frac) {
    if (d == 0) return requested;
    const int reach = fd_reach(d);
    const double avail = std::min(x0 - dom.lo, dom.hi - x0);
    if (avail <= 0.0)
        throw StencilOutOfDomain("fd: expansion point sits on or outside the domain boundary");
    double h = requested;
    if (reach * h >= avail) h = 0.9 * avail / reach;
    if (h < floor_frac * dom.width())
        throw StencilOutOfDomain("fd: stencil cannot fit in the domain (step " +
                                 std::to_string(h) + " below floor)");
    return h;
}

} // namespace detail

// Mixed partial d^(du+dv) f / du^du dv^dv at p by tensor-product central
// stencils, Richardson-extrapolated over simultaneous step halving.
inline FdValue fd_partial(const std::function<double(double, double)>& f, Point2 p, DomainBox dom,
                          int du, int dv, const FdConfig& cfg = {}) {
    if (du < 0 || dv < 0 || du > 4 || dv > 4 || du + dv > 4)
        throw BadParameter("fd_partial: derivative orders must satisfy 0 <= du+dv <= 4");
    if (cfg.levels < 1 || cfg.levels > 8) throw BadParameter("fd_partial: levels must be 1..8");
    if (du == 0 && dv == 0) return {f(p.u, p.v), 0.0};

    // rounding noise scales like eps/h^(du+dv), so the step multiplier keys on
    // the total derivative order, not on each direction alone
    const double mult = detail::fd_step_multiplier(du + dv);
    const double hu0 =
        detail::fd_fit_step(cfg.h_scale * dom.u.width() * mult, p.u, dom.u, du, cfg.shrink_floor);
    const double hv0 =
        detail::fd_fit_step(cfg.h_scale * dom.v.width() * mult, p.v, dom.v, dv, cfg.shrink_floor);

    auto raw = [&](double hu, double hv) -> double {
        auto inner = [&](double uu) -> double {
            if (dv == 0) return f(uu, p.v);
            return detail::fd_stencil([&](double vv) { return f(uu, vv); }, p.v, hv, dv);
        };
        if (du == 0) return inner(p.u);
        return detail::fd_stencil(inner, p.u, hu, du);
    };

    std::vector<std::vector<double>> T(cfg.levels);
    for (int l = 0; l < cfg.levels; ++l) {
        const double scale = std::pow(0.5, l);
        T[l].resize(l + 1);
        T[l][0] = raw(hu0 * scale, hv0 * scale);
        double pow4 = 1.0;
        for (int m = 1; m <= l; ++m) {
            pow4 *= 4.0;
            T[l][m] = (pow4 * T[l][m - 1] - T[l - 1][m - 1]) / (pow4 - 1.0);
        }
    }
    FdValue out;
    out.value = T[cfg.levels - 1][cfg.levels - 1];
    out.error_estimate = cfg.levels >= 2
                             ? std::abs(out.value - T[cfg.levels - 2][cfg.levels - 2])
                             : std::abs(out.value);
    return out;
}

// All surface partials up to max_order (<= 4), from order-0 evaluations only.
struct FdPartials {
    int max_order = 2;
    std::array<std::array<Vec3, 5>, 5> value{};  // [du][dv], du+dv <= max_order
    std::array<std::array<double, 5>, 5> error{};
};

inline FdPartials fd_partials(const SurfaceSpec& spec, Point2 p, int max_order,
                              const FdConfig& cfg = {}) {
    if (max_order < 0 || max_order > 4)
        throw BadParameter("fd_partials: max_order must be 0..4");
    FdPartials out;
    out.max_order = max_order;
    for (int c = 0; c < 3; ++c) {
        auto fc = [&spec, c](double u, double v) { return spec.evaluate(u, v, 0)[c].value(); };
        for (int du = 0; du <= max_order; ++du)
            for (int dv = 0; du + dv <= max_order; ++dv) {
                const FdValue fv = fd_partial(fc, p, spec.domain, du, dv, cfg);
                out.value[du][dv][c] = fv.value;
                out.error[du][dv] = std::max(out.error[du][dv], fv.error_estimate);
            }
    }
    return out;
}

// First/second fundamental data via finite differences alone; the third form
// deliberately takes the algebraic route e = b g^{-1} b, making it independent
// of the frame module's normal-derivative construction.
struct FdCurvatures {
    Vec3 n{};
    double g11 = 0, g12 = 0, g22 = 0;
    double b11 = 0, b12 = 0, b22 = 0;
    double e11 = 0, e12 = 0, e22 = 0;
    double H = 0, K = 0;
    double max_error_estimate = 0;
};

inline FdCurvatures fd_curvatures(const SurfaceSpec& spec, Point2 p, const FdConfig& cfg = {}) {
    const FdPartials d = fd_partials(spec, p, 2, cfg);
    const Vec3 xu = d.value[1][0], xv = d.value[0][1];
    const Vec3 xuu = d.value[2][0], xuv = d.value[1][1], xvv = d.value[0][2];

    FdCurvatures out;
    for (int du = 0; du <= 2; ++du)
        for (int dv = 0; du + dv <= 2; ++dv)
            out.max_error_estimate = std::max(out.max_error_estimate, d.error[du][dv]);

    out.g11 = dot(xu, xu);
    out.g12 = dot(xu, xv);
    out.g22 = dot(xv, xv);
    const double detg = out.g11 * out.g22 - out.g12 * out.g12;
    if (std::abs(detg) <= kRegularityFloor * kRegularityFloor)
        throw IrregularPoint("fd_curvatures: first form degenerate at sampled point");

    const Vec3 cr = cross(xu, xv);
    const double cn = norm(cr);
    if (cn < kRegularityFloor)
        throw IrregularPoint("fd_curvatures: normal direction degenerate at sampled point");
    out.n = cr * (1.0 / cn);

    out.b11 = dot(out.n, xuu);
    out.b12 = dot(out.n, xuv);
    out.b22 = dot(out.n, xvv);
    const double detb = out.b11 * out.b22 - out.b12 * out.b12;

    out.K = detb / detg;
    out.H = (out.g11 * out.b22 - 2.0 * out.g12 * out.b12 + out.g22 * out.b11) / (2.0 * detg);

    // e = b g^{-1} b
    const double gi11 = out.g22 / detg, gi12 = -out.g12 / detg, gi22 = out.g11 / detg;
    const double B[2][2] = {{out.b11, out.b12}, {out.b12, out.b22}};
    const double Gi[2][2] = {{gi11, gi12}, {gi12, gi22}};
    double E[2][2] = {{0, 0}, {0, 0}};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int m = 0; m < 2; ++m) E[i][j] += B[i][k] * Gi[k][m] * B[m][j];
    out.e11 = E[0][0];
    out.e12 = E[0][1];
    out.e22 = E[1][1];
    return out;
}

} // namespace beltrami
