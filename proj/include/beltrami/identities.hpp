#pragma once

// Residual suite: 27 registered tensor identities connecting the fundamental
// forms, their Christoffel families, the difference tensors, and the two
// Beltrami operators.  Each check evaluates a coordinate-free identity at
// every grid sample and reports the worst normalized residual:
//     residual = max |lhs - rhs|  /  max(1, largest participating term).
// Checks are admissibility-gated: ones that use the second form as a metric
// (its operators, Christoffels, or difference tensors) need elliptic samples
// (K > eps_K); ones that only invert b or e need |K| > eps_K; the rest run
// everywhere.  Inadmissible samples are recorded as SKIP with a typed reason,
// never as failures, and a check no sample could evaluate reports SKIP.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "common.hpp"
#include "errors.hpp"
#include "geometry.hpp"
#include "surface.hpp"

namespace beltrami {

enum class CheckReq { none, nonparabolic, elliptic };
enum class CheckScope { generic, sphere_only, parallel_only };
enum class Verdict { PASS, FAIL, SKIP };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::PASS: return "PASS";
        case Verdict::FAIL: return "FAIL";
        case Verdict::SKIP: return "SKIP";
    }
    return "?";
}

namespace detail {

// residual accumulator implementing the shared normalization rule
struct Res {
    double diff = 0.0, scale = 0.0;
    void add(double d) { diff = std::max(diff, std::abs(d)); }
    void term(double t) { scale = std::max(scale, std::abs(t)); }
    double norm() const { return diff / std::max(1.0, scale); }
};

struct CheckContext {
    bool nonparabolic = false, elliptic = false;
    bool has_base = false, base_nonparabolic = false;
    bool sphere_origin = false;
    double sphere_r = 0, rho = 0;

    Vec3 x{}, n{};
    Vec3 xd[2]{}, nd[2]{}, ndd[2][2]{};
    double g[2][2]{}, ginv[2][2]{}, detg = 0, detg_d[2]{};
    double b[2][2]{}, detb = 0, detb_d[2]{};
    double e[2][2]{};
    double Gam[2][2][2]{};
    double H = 0, K = 0, H_d[2]{}, K_d[2]{};
    Vec3 lapI_x{}, lapI_n{};
    double covIb[2][2][2]{};
    int n_scalars = 0;
    double phi_d[4][2]{};

    double binv[2][2]{}, einv[2][2]{}, Alpha[2][2][2]{}, covIIIb[2][2][2]{},
        einv_d[2][2][2]{};
    Vec3 lapIII_x{}, lapIII_n{};
    double w = 0, w_d[2]{};
    double T[2][2][2]{}, Tt[2][2][2]{};

    Vec3 lapII_x{}, lapII_n{};

    double base_H = 0, base_K = 0, base_e[2][2]{};
    double lap3_phi_self[3]{}, lap3_phi_base[3]{};
};

inline CheckContext build_context(const SurfaceSpec& spec, Point2 p, int order, double eps_K,
                                  unsigned scalar_mask) {
    CheckContext ctx;
    FrameData fr = frame(spec, p, order);

    ctx.x = values(fr.x);
    ctx.n = values(fr.n);
    for (int i = 0; i < 2; ++i) {
        ctx.xd[i] = values(fr.x_d[i]);
        ctx.nd[i] = values(fr.n_d[i]);
        ctx.ndd[i][0] = values(derive(fr.n_d[i], Var::u));
        ctx.ndd[i][1] = values(derive(fr.n_d[i], Var::v));
    }
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            ctx.g[i][j] = fr.I.value(i, j);
            ctx.ginv[i][j] = fr.I.inv_value(i, j);
            ctx.b[i][j] = fr.II.value(i, j);
            ctx.e[i][j] = fr.III.value(i, j);
        }
    ctx.detg = fr.I.det.value();
    ctx.detb = fr.II.det.value();
    for (int k = 0; k < 2; ++k) {
        Var dir = k == 0 ? Var::u : Var::v;
        ctx.detg_d[k] = derive(fr.I.det, dir).value();
        ctx.detb_d[k] = derive(fr.II.det, dir).value();
        ctx.H_d[k] = derive(fr.H, dir).value();
        ctx.K_d[k] = derive(fr.K, dir).value();
    }
    ctx.H = fr.H.value();
    ctx.K = fr.K.value();
    for (int k = 0; k < 2; ++k)
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) ctx.Gam[k][i][j] = fr.gamma.value(k, i, j);

    CovariantForm cb = covariant_d_form(FormKind::I, fr, fr.II, eps_K);
    for (int k = 0; k < 2; ++k)
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) ctx.covIb[k][i][j] = cb.value(k, i, j);

    ctx.lapI_x = values(laplacian(FormKind::I, fr, fr.x, eps_K));
    ctx.lapI_n = values(laplacian(FormKind::I, fr, fr.n, eps_K));

    // test scalars: u, v, u^2+v^2, <x,x> (subset by mask)
    {
        const int m = fr.x[0].order();
        Jet2 U = Jet2::variable_u(m, p.u, p.v), V = Jet2::variable_v(m, p.u, p.v);
        Jet2 phis[4] = {U, V, U * U + V * V, dot(fr.x, fr.x)};
        for (int t = 0; t < 4; ++t) {
            if (!(scalar_mask & (1u << t))) continue;
            ctx.phi_d[ctx.n_scalars][0] = derive(phis[t], Var::u).value();
            ctx.phi_d[ctx.n_scalars][1] = derive(phis[t], Var::v).value();
            ++ctx.n_scalars;
        }
    }

    ctx.nonparabolic = std::abs(ctx.K) > eps_K && fr.II.invertible() && fr.III.invertible() &&
                       fr.pi.has_value() && fr.alpha.has_value();
    ctx.elliptic = ctx.nonparabolic && ctx.K > eps_K;

    if (ctx.nonparabolic) {
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                ctx.binv[i][j] = fr.II.inv_value(i, j);
                ctx.einv[i][j] = fr.III.inv_value(i, j);
            }
        for (int k = 0; k < 2; ++k)
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) ctx.Alpha[k][i][j] = fr.alpha->value(k, i, j);
        CovariantForm c3 = covariant_d_form(FormKind::III, fr, fr.II, eps_K);
        for (int k = 0; k < 2; ++k)
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) ctx.covIIIb[k][i][j] = c3.value(k, i, j);
        for (int m2 = 0; m2 < 2; ++m2)
            for (int i = 0; i < 2; ++i)
                for (int k = 0; k < 2; ++k)
                    ctx.einv_d[m2][i][k] =
                        derive(fr.III.inv_at(i, k), m2 == 0 ? Var::u : Var::v).value();
        ctx.lapIII_x = values(laplacian(FormKind::III, fr, fr.x, eps_K));
        ctx.lapIII_n = values(laplacian(FormKind::III, fr, fr.n, eps_K));
        Jet2 wj = (fr.H * 2.0) * recip(fr.K);
        ctx.w = wj.value();
        ctx.w_d[0] = derive(wj, Var::u).value();
        ctx.w_d[1] = derive(wj, Var::v).value();
        DifferenceTensors dt = t_tensors(fr);
        for (int k = 0; k < 2; ++k)
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) {
                    ctx.T[k][i][j] = dt.T.value(k, i, j);
                    ctx.Tt[k][i][j] = dt.Ttilde.value(k, i, j);
                }
    }
    if (ctx.elliptic) {
        ctx.lapII_x = values(laplacian(FormKind::II, fr, fr.x, eps_K));
        ctx.lapII_n = values(laplacian(FormKind::II, fr, fr.n, eps_K));
    }

    if (spec.expected.sphere_radius) {
        Vec3 c = spec.expected.sphere_center.value_or(Vec3{0, 0, 0});
        if (norm(c) < 1e-14) {
            ctx.sphere_origin = true;
            ctx.sphere_r = *spec.expected.sphere_radius;
        }
    }

    if (spec.is_parallel()) {
        ctx.has_base = true;
        ctx.rho = spec.parallel_rho;
        FrameData bf = frame(*spec.parallel_base, p, order);
        ctx.base_H = bf.H.value();
        ctx.base_K = bf.K.value();
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) ctx.base_e[i][j] = bf.III.value(i, j);
        ctx.base_nonparabolic = std::abs(ctx.base_K) > eps_K && bf.III.invertible() &&
                                bf.alpha.has_value();
        if (ctx.base_nonparabolic && ctx.nonparabolic) {
            const int m = fr.x[0].order();
            Jet2 U = Jet2::variable_u(m, p.u, p.v), V = Jet2::variable_v(m, p.u, p.v);
            Jet2 phis[3] = {U, V, U * U + V * V};
            for (int t = 0; t < 3; ++t) {
                ctx.lap3_phi_self[t] = laplacian(FormKind::III, fr, phis[t], eps_K).value();
                ctx.lap3_phi_base[t] = laplacian(FormKind::III, bf, phis[t], eps_K).value();
            }
        }
    }
    return ctx;
}

// --- the 27 residual evaluators -------------------------------------------------

using CheckFn = double (*)(const CheckContext&);

inline double id01(const CheckContext& c) { // D_I x = -2 H n
    Res r;
    for (int k = 0; k < 3; ++k) {
        const double rhs = -2.0 * c.H * c.n[k];
        r.add(c.lapI_x[k] - rhs);
        r.term(c.lapI_x[k]);
        r.term(rhs);
    }
    return r.norm();
}

inline double id02(const CheckContext& c) { // grad_I(phi, x) + grad_II(phi, n) = 0
    Res r;
    for (int t = 0; t < c.n_scalars; ++t)
        for (int k = 0; k < 3; ++k) {
            double A = 0, B = 0;
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) {
                    A += c.ginv[i][j] * c.phi_d[t][i] * c.xd[j][k];
                    B += c.binv[i][j] * c.phi_d[t][i] * c.nd[j][k];
                }
            r.add(A + B);
            r.term(A);
            r.term(B);
        }
    return r.norm();
}

inline double id03(const CheckContext& c) { // grad_II(phi, x) + grad_III(phi, n) = 0
    Res r;
    for (int t = 0; t < c.n_scalars; ++t)
        for (int k = 0; k < 3; ++k) {
            double A = 0, B = 0;
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) {
                    A += c.binv[i][j] * c.phi_d[t][i] * c.xd[j][k];
                    B += c.einv[i][j] * c.phi_d[t][i] * c.nd[j][k];
                }
            r.add(A + B);
            r.term(A);
            r.term(B);
        }
    return r.norm();
}

inline double id04(const CheckContext& c) { // n_/j = -e_jk b^km x_/m = -b_jk g^km x_/m
    Res r;
    for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 3; ++k) {
            double t1 = 0, t2 = 0;
            for (int a = 0; a < 2; ++a)
                for (int m = 0; m < 2; ++m) {
                    t1 += c.e[j][a] * c.binv[a][m] * c.xd[m][k];
                    t2 += c.b[j][a] * c.ginv[a][m] * c.xd[m][k];
                }
            r.add(c.nd[j][k] + t1);
            r.add(c.nd[j][k] + t2);
            r.term(c.nd[j][k]);
            r.term(t1);
            r.term(t2);
        }
    return r.norm();
}

inline double id05(const CheckContext& c) { // D_II x via I-covariant derivative of b
    Res r;
    for (int k = 0; k < 3; ++k) {
        double s1 = 0, tr = 0;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                tr += c.binv[i][j] * c.b[i][j];
                for (int a = 0; a < 2; ++a)
                    for (int m = 0; m < 2; ++m)
                        s1 += 0.5 * c.binv[i][j] * c.binv[a][m] * c.covIb[a][i][j] * c.xd[m][k];
            }
        const double s2 = tr * c.n[k];
        r.add(c.lapII_x[k] - (s1 - s2));
        r.term(c.lapII_x[k]);
        r.term(s1);
        r.term(s2);
    }
    return r.norm();
}

inline double id06(const CheckContext& c) { // Codazzi: nabla_I b totally symmetric
    Res r;
    for (int k = 0; k < 2; ++k)
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                r.add(c.covIb[k][i][j] - c.covIb[i][j][k]);
                r.term(c.covIb[k][i][j]);
                r.term(c.covIb[i][j][k]);
            }
    return r.norm();
}

inline double id07(const CheckContext& c) { // D_II x with trace term collapsed to 2n
    Res r;
    for (int k = 0; k < 3; ++k) {
        double s1 = 0;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int m = 0; m < 2; ++m)
                    for (int a = 0; a < 2; ++a)
                        s1 += 0.5 * c.binv[i][j] * c.binv[m][a] * c.covIb[i][j][a] * c.xd[m][k];
        const double s2 = 2.0 * c.n[k];
        r.add(c.lapII_x[k] - (s1 - s2));
        r.term(c.lapII_x[k]);
        r.term(s1);
        r.term(s2);
    }
    return r.norm();
}

inline double id08(const CheckContext& c) { // T = -(1/2) b^{-1} nabla_I b
    Res r;
    for (int k = 0; k < 2; ++k)
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                double s = 0;
                for (int m = 0; m < 2; ++m) s += 0.5 * c.binv[k][m] * c.covIb[m][i][j];
                r.add(c.T[k][i][j] + s);
                r.term(c.T[k][i][j]);
                r.term(s);
            }
    return r.norm();
}

inline double id09(const CheckContext& c) { // Christoffel traces = log-derivatives of dets
    Res r;
    for (int i = 0; i < 2; ++i) {
        double trG = 0, trP = 0;
        for (int j = 0; j < 2; ++j) {
            trG += c.Gam[j][i][j];
            trP += c.Gam[j][i][j] - c.T[j][i][j]; // Pi = Gamma - T
        }
        const double dG = c.detg_d[i] / (2.0 * c.detg);
        const double dP = c.detb_d[i] / (2.0 * c.detb);
        r.add(trG - dG);
        r.add(trP - dP);
        r.term(trG);
        r.term(dG);
        r.term(trP);
        r.term(dP);
    }
    return r.norm();
}

inline double id10(const CheckContext& c) { // four-way log-curvature-derivative chain
    Res r;
    for (int k = 0; k < 2; ++k) {
        double trG = 0, trP = 0, trT = 0, s5 = 0;
        for (int j = 0; j < 2; ++j) {
            trG += c.Gam[j][k][j];
            trT += c.T[j][k][j];
        }
        trP = trG - trT;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) s5 += c.binv[i][j] * c.covIb[i][k][j];
        const double a1 = c.K_d[k] / c.K;
        const double a2 = c.detb_d[k] / c.detb - c.detg_d[k] / c.detg;
        const double a3 = 2.0 * (trP - trG);
        const double a4 = -2.0 * trT;
        const double a5 = s5;
        r.add(a1 - a2);
        r.add(a2 - a3);
        r.add(a3 - a4);
        r.add(a4 - a5);
        for (double t : {a1, a2, a3, a4, a5}) r.term(t);
    }
    return r.norm();
}

inline double id11(const CheckContext& c) { // D_II x = -(1/2K) grad_III(K, n) - 2n
    Res r;
    for (int k = 0; k < 3; ++k) {
        double s = 0;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) s += c.einv[i][j] * c.K_d[i] * c.nd[j][k];
        const double rhs = -s / (2.0 * c.K) - 2.0 * c.n[k];
        r.add(c.lapII_x[k] - rhs);
        r.term(c.lapII_x[k]);
        r.term(s / (2.0 * c.K));
        r.term(2.0 * c.n[k]);
    }
    return r.norm();
}

inline double id12(const CheckContext& c) { // D_III x expanded via nabla_I b
    Res r;
    for (int k = 0; k < 3; ++k) {
        double s1 = 0, tr = 0;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                tr += c.einv[i][j] * c.b[i][j];
                for (int a = 0; a < 2; ++a)
                    for (int m = 0; m < 2; ++m)
                        s1 += c.einv[i][j] * c.binv[a][m] * c.covIb[m][i][j] * c.xd[a][k];
            }
        const double s2 = tr * c.n[k];
        r.add(c.lapIII_x[k] - (s1 - s2));
        r.term(c.lapIII_x[k]);
        r.term(s1);
        r.term(s2);
    }
    return r.norm();
}

inline double id13(const CheckContext& c) { // D_III x = grad_III(2H/K, n) - (2H/K) n
    Res r;
    for (int k = 0; k < 3; ++k) {
        double s = 0;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) s += c.einv[i][j] * c.w_d[i] * c.nd[j][k];
        const double rhs = s - c.w * c.n[k];
        r.add(c.lapIII_x[k] - rhs);
        r.term(c.lapIII_x[k]);
        r.term(s);
        r.term(c.w * c.n[k]);
    }
    return r.norm();
}

inline double id14(const CheckContext& c) { // Ttilde = -(1/2) b^{-1} nabla_III b
    Res r;
    for (int k = 0; k < 2; ++k)
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                double s = 0;
                for (int m = 0; m < 2; ++m) s += 0.5 * c.binv[k][m] * c.covIIIb[m][i][j];
                r.add(c.Tt[k][i][j] + s);
                r.term(c.Tt[k][i][j]);
                r.term(s);
            }
    return r.norm();
}

inline double id15(const CheckContext& c) { // T + Ttilde = 0
    Res r;
    for (int k = 0; k < 2; ++k)
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                r.add(c.T[k][i][j] + c.Tt[k][i][j]);
                r.term(c.T[k][i][j]);
                r.term(c.Tt[k][i][j]);
            }
    return r.norm();
}

inline double id16(const CheckContext& c) { // III-covariant derivative of e^{ik} vanishes
    Res r;
    for (int m = 0; m < 2; ++m)
        for (int i = 0; i < 2; ++i)
            for (int k = 0; k < 2; ++k) {
                double s = c.einv_d[m][i][k];
                double corr = 0;
                for (int a = 0; a < 2; ++a)
                    corr += c.Alpha[i][a][m] * c.einv[a][k] + c.Alpha[k][a][m] * c.einv[i][a];
                r.add(s + corr);
                r.term(s);
                r.term(corr);
            }
    return r.norm();
}

inline double id17(const CheckContext& c) { // 2H/K = e^{ik} b_ik
    Res r;
    double s = 0;
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k) s += c.einv[i][k] * c.b[i][k];
    r.add(c.w - s);
    r.term(c.w);
    r.term(s);
    return r.norm();
}

inline double id18(const CheckContext& c) { // (2H/K)_/m = e^{ik} nabla_III_m b_ik
    Res r;
    for (int m = 0; m < 2; ++m) {
        double s = 0;
        for (int i = 0; i < 2; ++i)
            for (int k = 0; k < 2; ++k) s += c.einv[i][k] * c.covIIIb[m][i][k];
        r.add(c.w_d[m] - s);
        r.term(c.w_d[m]);
        r.term(s);
    }
    return r.norm();
}

inline double id19(const CheckContext& c) { // tangential part of D_III x = -grad_II(2H/K, x)
    Res r;
    for (int k = 0; k < 3; ++k) {
        double s1 = 0, s2 = 0;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                s2 += c.binv[i][j] * c.w_d[i] * c.xd[j][k];
                for (int a = 0; a < 2; ++a)
                    for (int m = 0; m < 2; ++m)
                        s1 += c.einv[i][j] * c.binv[a][m] * c.covIb[m][i][j] * c.xd[a][k];
            }
        r.add(s1 + s2);
        r.term(s1);
        r.term(s2);
    }
    return r.norm();
}

inline double id20(const CheckContext& c) { // D_I n = 2 grad_I(H, x) + 2(2H^2 - K) n
    Res r;
    for (int k = 0; k < 3; ++k) {
        double s = 0;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) s += c.ginv[i][j] * c.H_d[i] * c.xd[j][k];
        const double rhs = 2.0 * s + 2.0 * (2.0 * c.H * c.H - c.K) * c.n[k];
        r.add(c.lapI_n[k] - rhs);
        r.term(c.lapI_n[k]);
        r.term(2.0 * s);
        r.term(2.0 * (2.0 * c.H * c.H - c.K) * c.n[k]);
    }
    return r.norm();
}

inline double id21(const CheckContext& c) { // D_II n = b^{km} (tr T)_m n_/k + 2 H n
    Res r;
    for (int k = 0; k < 3; ++k) {
        double s = 0;
        for (int a = 0; a < 2; ++a) {
            double trT = 0;
            for (int j = 0; j < 2; ++j) trT += c.T[j][a][j];
            for (int m = 0; m < 2; ++m) s += c.binv[m][a] * trT * c.nd[m][k];
        }
        const double rhs = s + 2.0 * c.H * c.n[k];
        r.add(c.lapII_n[k] - rhs);
        r.term(c.lapII_n[k]);
        r.term(s);
        r.term(2.0 * c.H * c.n[k]);
    }
    return r.norm();
}

inline double id22(const CheckContext& c) { // D_II n = (1/2K) grad_I(K, x) + 2 H n
    Res r;
    for (int k = 0; k < 3; ++k) {
        double s = 0;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) s += c.ginv[i][j] * c.K_d[i] * c.xd[j][k];
        const double rhs = s / (2.0 * c.K) + 2.0 * c.H * c.n[k];
        r.add(c.lapII_n[k] - rhs);
        r.term(c.lapII_n[k]);
        r.term(s / (2.0 * c.K));
        r.term(2.0 * c.H * c.n[k]);
    }
    return r.norm();
}

inline double id23(const CheckContext& c) { // nabla_III_k n_/i = -e_ik n
    Res r;
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k)
            for (int m = 0; m < 3; ++m) {
                double cov = c.ndd[i][k][m];
                for (int a = 0; a < 2; ++a) cov -= c.Alpha[a][i][k] * c.nd[a][m];
                r.add(cov + c.e[i][k] * c.n[m]);
                r.term(cov);
                r.term(c.e[i][k] * c.n[m]);
            }
    return r.norm();
}

inline double id24(const CheckContext& c) { // D_III n = 2 n
    Res r;
    for (int k = 0; k < 3; ++k) {
        r.add(c.lapIII_n[k] - 2.0 * c.n[k]);
        r.term(c.lapIII_n[k]);
        r.term(2.0 * c.n[k]);
    }
    return r.norm();
}

inline double id25(const CheckContext& c) { // sphere support: <x, n> = -2/lambda = -r
    Res r;
    const double s = dot(c.x, c.n);
    r.add(s + c.sphere_r);
    r.term(s);
    r.term(c.sphere_r);
    return r.norm();
}

inline double id26(const CheckContext& c) { // offset surface: H*/K* = H/K - rho
    Res r;
    const double lhs = c.H / c.K;
    const double rhs = c.base_H / c.base_K - c.rho;
    r.add(lhs - rhs);
    r.term(lhs);
    r.term(rhs);
    return r.norm();
}

inline double id27(const CheckContext& c) { // offset surface: third form is shared
    Res r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            r.add(c.e[i][j] - c.base_e[i][j]);
            r.term(c.e[i][j]);
            r.term(c.base_e[i][j]);
        }
    for (int t = 0; t < 3; ++t) {
        r.add(c.lap3_phi_self[t] - c.lap3_phi_base[t]);
        r.term(c.lap3_phi_self[t]);
        r.term(c.lap3_phi_base[t]);
    }
    return r.norm();
}

} // namespace detail

struct IdentityCheck {
    const char* id;
    const char* description;
    CheckReq req;
    CheckScope scope;
    detail::CheckFn eval;
};

inline const std::vector<IdentityCheck>& identity_registry() {
    using namespace detail;
    static const std::vector<IdentityCheck> reg = {
        {"ID01", "second-kind operator of I on position equals -2Hn", CheckReq::none,
         CheckScope::generic, id01},
        {"ID02", "I-gradient against position cancels II-gradient against normal",
         CheckReq::elliptic, CheckScope::generic, id02},
        {"ID03", "II-gradient against position cancels III-gradient against normal",
         CheckReq::elliptic, CheckScope::generic, id03},
        {"ID04", "normal derivative via -e b^{-1} and via -b g^{-1} on tangent frame",
         CheckReq::nonparabolic, CheckScope::generic, id04},
        {"ID05", "second-kind operator of II on position, expanded via I-covariant b",
         CheckReq::elliptic, CheckScope::generic, id05},
        {"ID06", "I-covariant derivative of b is totally symmetric", CheckReq::none,
         CheckScope::generic, id06},
        {"ID07", "second-kind operator of II on position with normal trace collapsed",
         CheckReq::elliptic, CheckScope::generic, id07},
        {"ID08", "difference tensor T from half the b-inverse contraction of I-covariant b",
         CheckReq::elliptic, CheckScope::generic, id08},
        {"ID09", "Christoffel traces equal half the log-derivatives of the form determinants",
         CheckReq::elliptic, CheckScope::generic, id09},
        {"ID10", "log-derivative of K: determinant, trace, and contraction forms agree",
         CheckReq::elliptic, CheckScope::generic, id10},
        {"ID11", "second-kind operator of II on position via the III-gradient of K",
         CheckReq::elliptic, CheckScope::generic, id11},
        {"ID12", "second-kind operator of III on position, expanded via I-covariant b",
         CheckReq::nonparabolic, CheckScope::generic, id12},
        {"ID13", "second-kind operator of III on position via the III-gradient of 2H/K",
         CheckReq::nonparabolic, CheckScope::generic, id13},
        {"ID14", "difference tensor Ttilde from half the b-inverse contraction of III-covariant b",
         CheckReq::elliptic, CheckScope::generic, id14},
        {"ID15", "difference tensors T and Ttilde cancel", CheckReq::elliptic,
         CheckScope::generic, id15},
        {"ID16", "III-covariant derivative of the inverse third form vanishes",
         CheckReq::nonparabolic, CheckScope::generic, id16},
        {"ID17", "2H/K equals the e-inverse trace of b", CheckReq::nonparabolic,
         CheckScope::generic, id17},
        {"ID18", "partials of 2H/K equal the e-inverse trace of III-covariant b",
         CheckReq::nonparabolic, CheckScope::generic, id18},
        {"ID19", "tangential part of the III-operator equals minus the II-gradient of 2H/K",
         CheckReq::elliptic, CheckScope::generic, id19},
        {"ID20", "second-kind operator of I on the normal via H-gradient and curvatures",
         CheckReq::none, CheckScope::generic, id20},
        {"ID21", "second-kind operator of II on the normal via the trace of T",
         CheckReq::elliptic, CheckScope::generic, id21},
        {"ID22", "second-kind operator of II on the normal via the I-gradient of K",
         CheckReq::elliptic, CheckScope::generic, id22},
        {"ID23", "III-covariant derivative of the normal frame reproduces -e n",
         CheckReq::nonparabolic, CheckScope::generic, id23},
        {"ID24", "second-kind operator of III fixes the normal up to factor 2",
         CheckReq::nonparabolic, CheckScope::generic, id24},
        {"ID25", "support function of an origin-centered sphere equals -2/lambda",
         CheckReq::none, CheckScope::sphere_only, id25},
        {"ID26", "offset surface shifts H/K by exactly -rho", CheckReq::nonparabolic,
         CheckScope::parallel_only, id26},
        {"ID27", "offset surface shares the third form and its operator", CheckReq::nonparabolic,
         CheckScope::parallel_only, id27},
    };
    return reg;
}

struct CheckResult {
    std::string id;
    std::string description;
    Verdict verdict = Verdict::SKIP;
    double max_residual = 0.0;
    Point2 argmax{};
    int evaluated = 0;
    int skipped = 0;
    std::string skip_reason;
};

struct IdentityReport {
    std::string surface;
    GridSpec grid;
    int order = 5;
    double eps_id = kDefaultEpsId;
    std::vector<CheckResult> checks;

    bool all_pass() const {
        for (const auto& c : checks)
            if (c.verdict == Verdict::FAIL) return false;
        return true;
    }
    const CheckResult* find(const std::string& id) const {
        for (const auto& c : checks)
            if (c.id == id) return &c;
        return nullptr;
    }
};

struct IdentityOptions {
    int order = 5;
    double eps_id = kDefaultEpsId;
    double eps_K = kDefaultEpsK;
    std::vector<std::string> check_filter; // empty = all
    unsigned scalar_mask = 0xF;            // test scalars: u, v, u^2+v^2, <x,x>
};

inline IdentityReport run_identities(const SurfaceSpec& spec, GridSpec grid,
                                     const IdentityOptions& opt = {}) {
    if (opt.order < 3)
        throw BadParameter("run_identities: jet order must be >= 3 (covariant data needs it)");
    if (grid.nu < 1 || grid.nv < 1) throw BadParameter("run_identities: empty grid");
    if ((opt.scalar_mask & 0xF) == 0)
        throw BadParameter("run_identities: at least one test scalar required");

    std::vector<const IdentityCheck*> active;
    for (const auto& c : identity_registry()) {
        if (opt.check_filter.empty()) {
            active.push_back(&c);
            continue;
        }
        for (const auto& want : opt.check_filter)
            if (want == c.id) {
                active.push_back(&c);
                break;
            }
    }
    if (active.empty()) throw BadParameter("run_identities: check filter matched nothing");

    IdentityReport rep;
    rep.surface = spec.selector();
    rep.grid = grid;
    rep.order = opt.order;
    rep.eps_id = opt.eps_id;
    rep.checks.resize(active.size());
    for (std::size_t i = 0; i < active.size(); ++i) {
        rep.checks[i].id = active[i]->id;
        rep.checks[i].description = active[i]->description;
    }

    auto record_skip = [&](CheckResult& r, const std::string& reason) {
        ++r.skipped;
        if (r.skip_reason.empty()) r.skip_reason = reason;
    };

    for (int iu = 0; iu < grid.nu; ++iu) {
        for (int iv = 0; iv < grid.nv; ++iv) {
            Point2 p{spec.domain.u.lo + (iu + 0.5) * spec.domain.u.width() / grid.nu,
                     spec.domain.v.lo + (iv + 0.5) * spec.domain.v.width() / grid.nv};
            detail::CheckContext ctx;
            bool ctx_ok = true;
            std::string ctx_err;
            try {
                ctx = detail::build_context(spec, p, opt.order, opt.eps_K, opt.scalar_mask);
            } catch (const Error& e) {
                ctx_ok = false;
                ctx_err = e.kind();
            }
            for (std::size_t i = 0; i < active.size(); ++i) {
                CheckResult& r = rep.checks[i];
                if (!ctx_ok) {
                    record_skip(r, ctx_err);
                    continue;
                }
                if (active[i]->scope == CheckScope::sphere_only && !ctx.sphere_origin) {
                    record_skip(r, "NotAnOriginSphere");
                    continue;
                }
                if (active[i]->scope == CheckScope::parallel_only &&
                    !(ctx.has_base && ctx.base_nonparabolic)) {
                    record_skip(r, ctx.has_base ? "ParabolicPoint" : "NotAParallelSurface");
                    continue;
                }
                if (active[i]->req == CheckReq::nonparabolic && !ctx.nonparabolic) {
                    record_skip(r, "ParabolicPoint");
                    continue;
                }
                if (active[i]->req == CheckReq::elliptic && !ctx.elliptic) {
                    record_skip(r, ctx.nonparabolic ? "NonEllipticPoint" : "ParabolicPoint");
                    continue;
                }
                const double res = active[i]->eval(ctx);
                ++r.evaluated;
                if (res >= r.max_residual) {
                    r.max_residual = res;
                    r.argmax = p;
                }
            }
        }
    }

    for (auto& r : rep.checks) {
        if (r.evaluated == 0)
            r.verdict = Verdict::SKIP;
        else
            r.verdict = (r.max_residual < opt.eps_id) ? Verdict::PASS : Verdict::FAIL;
    }
    return rep;
}

} // namespace beltrami
