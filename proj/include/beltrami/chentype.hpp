#pragma once

// Finite-type detection for the second-kind operators.  At S admissible
// parameter points the probe evaluates the Krylov chain f, Df, ..., D^k f
// (f = position or unit normal, D the second-kind operator of form II or III)
// and least-squares fits the smallest monic relation
//     D^k f + a_{k-1} D^{k-1} f + ... + a_0 f = d          (d constant in E^3)
// shared across all samples.  The first degree whose normalized residual
// drops below eps_type is accepted; its companion polynomial
//     t^k + a_{k-1} t^{k-1} + ... + a_0
// carries the spectrum.  The probe reports TYPED(k), NOT_TYPE_LE(k_max), or
// INDETERMINATE (ill-conditioned fit, complex or repeated spectrum, or too
// few admissible samples), never a silently wrong classification.
//
// All numerics here are deterministic: fixed-seed sampling, a fixed-sweep
// one-sided Jacobi SVD, and fixed-start Durand-Kerner iteration.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "common.hpp"
#include "errors.hpp"
#include "geometry.hpp"
#include "surface.hpp"

namespace beltrami {

namespace detail {

// ---- dense least squares via one-sided Jacobi SVD --------------------------

struct Mat {
    int rows = 0, cols = 0;
    std::vector<double> a;
    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0.0) {}
    double& at(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
    double at(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }
};

struct Svd {
    Mat U;                     // rows x cols, orthonormal columns (zero where rank-deficient)
    Mat V;                     // cols x cols
    std::vector<double> sigma; // descending
    double cond() const {
        if (sigma.empty() || sigma.back() <= 0.0)
            return std::numeric_limits<double>::infinity();
        return sigma.front() / sigma.back();
    }
};

inline Svd jacobi_svd(Mat A) {
    const int R = A.rows, C = A.cols;
    if (R < C) throw BadParameter("jacobi_svd: needs rows >= cols");
    Mat V(C, C);
    for (int i = 0; i < C; ++i) V.at(i, i) = 1.0;

    for (int sweep = 0; sweep < 60; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < C - 1; ++p) {
            for (int q = p + 1; q < C; ++q) {
                double alpha = 0, beta = 0, gamma = 0;
                for (int r = 0; r < R; ++r) {
                    alpha += A.at(r, p) * A.at(r, p);
                    beta += A.at(r, q) * A.at(r, q);
                    gamma += A.at(r, p) * A.at(r, q);
                }
                if (alpha == 0.0 || beta == 0.0 || gamma == 0.0) continue;
                off = std::max(off, std::abs(gamma) / std::sqrt(alpha * beta));
                const double zeta = (beta - alpha) / (2.0 * gamma);
                const double t =
                    (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double cs = 1.0 / std::sqrt(1.0 + t * t), sn = cs * t;
                for (int r = 0; r < R; ++r) {
                    const double ap = A.at(r, p), aq = A.at(r, q);
                    A.at(r, p) = cs * ap - sn * aq;
                    A.at(r, q) = sn * ap + cs * aq;
                }
                for (int r = 0; r < C; ++r) {
                    const double vp = V.at(r, p), vq = V.at(r, q);
                    V.at(r, p) = cs * vp - sn * vq;
                    V.at(r, q) = sn * vp + cs * vq;
                }
            }
        }
        if (off < 1e-15) break;
    }

    std::vector<double> nrm(C, 0.0);
    for (int j = 0; j < C; ++j) {
        double s = 0;
        for (int r = 0; r < R; ++r) s += A.at(r, j) * A.at(r, j);
        nrm[j] = std::sqrt(s);
    }
    std::vector<int> idx(C);
    for (int j = 0; j < C; ++j) idx[j] = j;
    std::stable_sort(idx.begin(), idx.end(), [&](int x, int y) { return nrm[x] > nrm[y]; });

    Svd out;
    out.U = Mat(R, C);
    out.V = Mat(C, C);
    out.sigma.assign(C, 0.0);
    for (int jj = 0; jj < C; ++jj) {
        const int j = idx[jj];
        out.sigma[jj] = nrm[j];
        if (nrm[j] > 0.0)
            for (int r = 0; r < R; ++r) out.U.at(r, jj) = A.at(r, j) / nrm[j];
        for (int r = 0; r < C; ++r) out.V.at(r, jj) = V.at(r, j);
    }
    return out;
}

// minimum-norm least-squares solution x = V diag(1/sigma) U^T b
inline std::vector<double> svd_solve(const Svd& s, const std::vector<double>& b) {
    const int R = s.U.rows, C = s.U.cols;
    if (static_cast<int>(b.size()) != R) throw BadParameter("svd_solve: rhs length mismatch");
    const double smax = s.sigma.empty() ? 0.0 : s.sigma.front();
    const double cutoff = smax * 1e-13;
    std::vector<double> x(C, 0.0);
    for (int j = 0; j < C; ++j) {
        if (s.sigma[j] <= cutoff) continue;
        double uy = 0;
        for (int r = 0; r < R; ++r) uy += s.U.at(r, j) * b[r];
        uy /= s.sigma[j];
        for (int c = 0; c < C; ++c) x[c] += uy * s.V.at(c, j);
    }
    return x;
}

// ---- roots of a monic real polynomial t^k + c[k-1] t^{k-1} + ... + c[0] ----

inline std::vector<std::complex<double>> poly_roots(const std::vector<double>& coef) {
    using cd = std::complex<double>;
    const int k = static_cast<int>(coef.size());
    std::vector<cd> roots;
    if (k == 0) return roots;
    if (k == 1) {
        roots.emplace_back(-coef[0], 0.0);
        return roots;
    }
    if (k == 2) {
        const double b = coef[1], c0 = coef[0];
        const double disc = b * b - 4.0 * c0;
        if (disc >= 0.0) {
            const double sd = std::sqrt(disc);
            const double q = -0.5 * (b + (b >= 0 ? sd : -sd));
            const double r1 = q;
            const double r2 = (q != 0.0) ? c0 / q : 0.0; // q == 0 only when b = c0 = 0
            roots.emplace_back(r1, 0.0);
            roots.emplace_back(r2, 0.0);
        } else {
            const double re = -0.5 * b, im = 0.5 * std::sqrt(-disc);
            roots.emplace_back(re, im);
            roots.emplace_back(re, -im);
        }
        return roots;
    }

    // Durand-Kerner with the customary fixed complex starts (0.4+0.9i)^j
    std::vector<cd> z(k);
    const cd g(0.4, 0.9);
    cd acc(1.0, 0.0);
    for (int j = 0; j < k; ++j) {
        acc *= g;
        z[j] = acc;
    }
    auto horner = [&](cd t) {
        cd val(1.0, 0.0);
        for (int i = k - 1; i >= 0; --i) val = val * t + coef[i];
        return val;
    };
    for (int iter = 0; iter < 500; ++iter) {
        double step = 0.0;
        for (int j = 0; j < k; ++j) {
            cd den(1.0, 0.0);
            for (int l = 0; l < k; ++l)
                if (l != j) den *= (z[j] - z[l]);
            if (std::abs(den) < 1e-300) den = cd(1e-300, 0.0);
            const cd delta = horner(z[j]) / den;
            z[j] -= delta;
            step = std::max(step, std::abs(delta));
        }
        if (step < 1e-15) break;
    }
    return {z.begin(), z.end()};
}

} // namespace detail

enum class ProbeVerdict { typed, not_type_le, indeterminate };

struct DegreeScanEntry {
    int degree = 0;
    double residual = 0.0;
    double cond = 0.0;
};

struct ProbeOptions {
    int k_max = 3;
    int samples = 24;           // admissible samples to gather in auto mode
    std::uint64_t seed = 7153; // deterministic sampling
    double eps_type = kDefaultEpsType;
    double eps_root = kDefaultEpsRoot;
    double cond_max = kDefaultCondMax;
    double eps_K = kDefaultEpsK;
};

struct TypeProbeResult {
    std::string surface;
    FormKind form = FormKind::III;
    FieldKind field = FieldKind::position;
    ProbeVerdict verdict = ProbeVerdict::indeterminate;
    int degree = 0; // accepted degree when typed (or the degree that went indeterminate)
    int k_max = 3;
    std::vector<double> poly;                       // a_0 .. a_{k-1}
    std::vector<std::complex<double>> eigenvalues;  // sorted by (re, im)
    std::optional<Vec3> center;                     // d / a_0 when a_0 is non-null
    double residual = 0.0;
    double cond = 0.0;
    bool null_type = false;
    std::string reason; // typed reason for INDETERMINATE, empty otherwise
    std::vector<DegreeScanEntry> scan;
    int samples_used = 0;
    std::uint64_t seed = 0;

    std::string verdict_string() const {
        switch (verdict) {
            case ProbeVerdict::typed: return "TYPED(" + std::to_string(degree) + ")";
            case ProbeVerdict::not_type_le: return "NOT_TYPE_LE(" + std::to_string(k_max) + ")";
            case ProbeVerdict::indeterminate: return "INDETERMINATE";
        }
        return "?";
    }
};

namespace detail {

// Fit the degree-k relation across samples; krylov[s][j] is D^j f at sample s.
inline TypeProbeResult fit_scan(const SurfaceSpec& spec, FormKind form, FieldKind field,
                                const std::vector<std::vector<Vec3>>& krylov,
                                const ProbeOptions& opt) {
    TypeProbeResult res;
    res.surface = spec.selector();
    res.form = form;
    res.field = field;
    res.k_max = opt.k_max;
    res.samples_used = static_cast<int>(krylov.size());
    res.seed = opt.seed;

    const int S = static_cast<int>(krylov.size());
    for (int k = 1; k <= opt.k_max; ++k) {
        double mag = 0.0;
        for (int s = 0; s < S; ++s)
            for (int j = 0; j <= k; ++j)
                for (int c = 0; c < 3; ++c) mag = std::max(mag, std::abs(krylov[s][j][c]));

        Mat A(3 * S, k + 3);
        std::vector<double> rhs(3 * S, 0.0);
        for (int s = 0; s < S; ++s)
            for (int c = 0; c < 3; ++c) {
                const int row = 3 * s + c;
                for (int j = 0; j < k; ++j) A.at(row, j) = krylov[s][j][c];
                A.at(row, k + c) = -1.0; // the constant offset d_c
                rhs[row] = -krylov[s][k][c];
            }

        const Svd svd = jacobi_svd(A);
        const std::vector<double> z = svd_solve(svd, rhs);
        double maxres = 0.0;
        for (int r = 0; r < 3 * S; ++r) {
            double az = 0;
            for (int c = 0; c < k + 3; ++c) az += A.at(r, c) * z[c];
            maxres = std::max(maxres, std::abs(az - rhs[r]));
        }
        const double resid = maxres / std::max(1.0, mag);
        res.scan.push_back({k, resid, svd.cond()});

        if (resid >= opt.eps_type) continue;

        // degree accepted by residual; vet conditioning and the spectrum
        res.degree = k;
        res.residual = resid;
        res.cond = svd.cond();
        res.poly.assign(z.begin(), z.begin() + k);
        if (res.cond > opt.cond_max) {
            res.verdict = ProbeVerdict::indeterminate;
            res.reason = "IllConditioned: design matrix condition " + std::to_string(res.cond) +
                         " exceeds limit";
            return res;
        }
        res.eigenvalues = poly_roots(res.poly);
        std::sort(res.eigenvalues.begin(), res.eigenvalues.end(),
                  [](const std::complex<double>& a, const std::complex<double>& b) {
                      if (a.real() != b.real()) return a.real() < b.real();
                      return a.imag() < b.imag();
                  });
        for (const auto& lam : res.eigenvalues)
            if (std::abs(lam.imag()) > opt.eps_root) {
                res.verdict = ProbeVerdict::indeterminate;
                res.reason = "ComplexEigenvalues: spectrum has imaginary part " +
                             std::to_string(lam.imag());
                return res;
            }
        for (std::size_t i = 0; i + 1 < res.eigenvalues.size(); ++i)
            if (std::abs(res.eigenvalues[i + 1] - res.eigenvalues[i]) < opt.eps_root) {
                res.verdict = ProbeVerdict::indeterminate;
                res.reason = "RepeatedEigenvalues: roots closer than eps_root";
                return res;
            }
        for (const auto& lam : res.eigenvalues)
            if (std::abs(lam) < opt.eps_root) res.null_type = true;
        if (std::abs(res.poly[0]) > opt.eps_root)
            res.center = Vec3{z[k], z[k + 1], z[k + 2]} * (1.0 / res.poly[0]);
        res.verdict = ProbeVerdict::typed;
        return res;
    }

    res.verdict = ProbeVerdict::not_type_le;
    res.degree = 0;
    res.residual = res.scan.empty() ? 0.0 : res.scan.back().residual;
    res.cond = res.scan.empty() ? 0.0 : res.scan.back().cond;
    return res;
}

} // namespace detail

// Probe with caller-chosen parameter points.  Points where the Krylov chain is
// inadmissible (parabolic/irregular) are dropped; fewer than k_max + 2
// surviving samples is an error.
inline TypeProbeResult probe_at(const SurfaceSpec& spec, FormKind form, FieldKind field,
                                const std::vector<Point2>& points, const ProbeOptions& opt = {}) {
    if (form == FormKind::I)
        throw BadParameter("probe: finite-type detection targets forms II and III");
    if (opt.k_max < 1 || opt.k_max > 8) throw BadParameter("probe: k_max must be in 1..8");
    std::vector<std::vector<Vec3>> krylov;
    krylov.reserve(points.size());
    for (const auto& p : points) {
        try {
            krylov.push_back(iterated_laplacian(form, spec, p, field, opt.k_max, opt.eps_K));
        } catch (const Error&) {
            // inadmissible or irregular sample: drop it
        }
    }
    if (static_cast<int>(krylov.size()) < opt.k_max + 2)
        throw TooFewSamples("probe: only " + std::to_string(krylov.size()) + " of " +
                            std::to_string(points.size()) + " samples admissible; need >= " +
                            std::to_string(opt.k_max + 2));
    return detail::fit_scan(spec, form, field, krylov, opt);
}

// Probe with deterministic pseudo-random sampling of the declared domain.  A
// domain without enough admissible points yields INDETERMINATE (reason
// TooFewSamples) rather than an exception.
inline TypeProbeResult probe(const SurfaceSpec& spec, FormKind form, FieldKind field,
                             const ProbeOptions& opt = {}) {
    if (form == FormKind::I)
        throw BadParameter("probe: finite-type detection targets forms II and III");
    if (opt.k_max < 1 || opt.k_max > 8) throw BadParameter("probe: k_max must be in 1..8");
    if (opt.samples < opt.k_max + 2)
        throw BadParameter("probe: samples must be at least k_max + 2");

    std::mt19937_64 rng(opt.seed);
    auto unit = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

    std::vector<std::vector<Vec3>> krylov;
    krylov.reserve(opt.samples);
    const int max_attempts = 64 * opt.samples;
    int attempts = 0;
    while (static_cast<int>(krylov.size()) < opt.samples && attempts < max_attempts) {
        ++attempts;
        Point2 p{spec.domain.u.lo + unit() * spec.domain.u.width(),
                 spec.domain.v.lo + unit() * spec.domain.v.width()};
        try {
            krylov.push_back(iterated_laplacian(form, spec, p, field, opt.k_max, opt.eps_K));
        } catch (const Error&) {
            // keep sampling
        }
    }
    if (static_cast<int>(krylov.size()) < opt.k_max + 2) {
        TypeProbeResult res;
        res.surface = spec.selector();
        res.form = form;
        res.field = field;
        res.k_max = opt.k_max;
        res.samples_used = static_cast<int>(krylov.size());
        res.seed = opt.seed;
        res.verdict = ProbeVerdict::indeterminate;
        res.reason = "TooFewSamples: only " + std::to_string(krylov.size()) + " admissible in " +
                     std::to_string(attempts) + " attempts; need >= " +
                     std::to_string(opt.k_max + 2);
        return res;
    }
    return detail::fit_scan(spec, form, field, krylov, opt);
}

// Comparison of a probe outcome against the catalog's analytic expectation.
struct ExpectedComparison {
    bool has_expected = false;
    bool matches = true; // vacuously true when nothing is expected
    std::string detail;
};

inline ExpectedComparison compare_expected(const SurfaceSpec& spec, const TypeProbeResult& r,
                                           double eig_tol = 1e-6) {
    ExpectedComparison out;
    const ExpectedTypeEntry* e = spec.expected.find(r.form, r.field);
    if (!e) {
        out.detail = "no analytic expectation recorded for this form/field";
        return out;
    }
    out.has_expected = true;
    if (r.verdict == ProbeVerdict::indeterminate) {
        out.matches = false;
        out.detail = "probe indeterminate: " + r.reason;
        return out;
    }
    if (e->kind == ExpectedKind::not_finite_type) {
        out.matches = (r.verdict == ProbeVerdict::not_type_le);
        out.detail = out.matches ? "confirmed: no finite type up to k_max"
                                 : "expected no finite type, probe accepted degree " +
                                       std::to_string(r.degree);
        return out;
    }
    if (r.verdict != ProbeVerdict::typed || r.degree != e->degree) {
        out.matches = false;
        out.detail = "expected TYPED(" + std::to_string(e->degree) + "), got " +
                     r.verdict_string();
        return out;
    }
    std::vector<double> want = e->eigenvalues;
    std::sort(want.begin(), want.end());
    if (want.size() != r.eigenvalues.size()) {
        out.matches = false;
        out.detail = "eigenvalue count mismatch";
        return out;
    }
    for (std::size_t i = 0; i < want.size(); ++i) {
        const auto& lam = r.eigenvalues[i];
        if (std::abs(lam.imag()) > eig_tol || std::abs(lam.real() - want[i]) > eig_tol) {
            out.matches = false;
            out.detail = "eigenvalue " + std::to_string(i) + " off: got " +
                         std::to_string(lam.real()) + ", expected " + std::to_string(want[i]);
            return out;
        }
    }
    if (e->null_type != r.null_type) {
        out.matches = false;
        out.detail = "null-type flag mismatch";
        return out;
    }
    out.detail = "matches analytic expectation";
    return out;
}

} // namespace beltrami
