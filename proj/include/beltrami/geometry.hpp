#pragma once

// Surface geometry from jets: fundamental forms I, II, III, unit normal,
// curvatures, Christoffel families, Beltrami operators of the first and
// second kind, covariant derivatives of symmetric 2-forms, difference
// tensors, and iterated operator (Krylov) sequences.
//
// Index conventions: parameter directions are 0 (u) and 1 (v); a symmetric
// form stores (a11, a12, a22); christoffel(k, i, j) is the upper-index-k
// symbol, symmetric in (i, j).
//
// Sign conventions (pinned by the sphere catalog entry, n = -x/r):
//   b_ij = <n, x_/ij>,   K = det b / det g,   2H = g^ij b_ij  (sphere: H = 1/r)
//   Second-kind operator:  D_J f = -a^ij (f_/ij - C^k_ij f_/k), so on the
//   flat plane D_I = -(d^2/du^2 + d^2/dv^2).

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "common.hpp"
#include "errors.hpp"
#include "jet.hpp"
#include "surface.hpp"
#include "vec.hpp"

namespace beltrami {

// Symmetric 2x2 form with jet entries, determinant, and (when the determinant
// is invertible at the base point) the inverse entries.
struct SymForm2 {
    Jet2 a11, a12, a22;
    Jet2 det;
    std::optional<std::array<Jet2, 3>> inv; // i11, i12, i22

    const Jet2& at(int i, int j) const {
        if (i == 0 && j == 0) return a11;
        if (i == 1 && j == 1) return a22;
        return a12;
    }
    double value(int i, int j) const { return at(i, j).value(); }

    bool invertible() const { return inv.has_value(); }
    const Jet2& inv_at(int i, int j) const {
        if (!inv) throw DivisionNearZero("SymForm2: form is not invertible at this point");
        if (i == 0 && j == 0) return (*inv)[0];
        if (i == 1 && j == 1) return (*inv)[2];
        return (*inv)[1];
    }
    double inv_value(int i, int j) const { return inv_at(i, j).value(); }
};

// C(k, i, j) = C^k_ij, jets, symmetric in (i, j)
struct ChristoffelFamily {
    std::array<Jet2, 8> c;
    const Jet2& at(int k, int i, int j) const { return c[4 * k + 2 * i + j]; }
    Jet2& at(int k, int i, int j) { return c[4 * k + 2 * i + j]; }
    double value(int k, int i, int j) const { return at(k, i, j).value(); }
};

struct FrameData {
    Vec3Jet x;
    std::array<Vec3Jet, 2> x_d;  // first derivatives
    Vec3Jet n;                   // unit normal
    std::array<Vec3Jet, 2> n_d;  // normal derivatives
    SymForm2 I, II, III;
    Jet2 H, K;
    ChristoffelFamily gamma;                  // of I; always present
    std::optional<ChristoffelFamily> pi;      // of II; present when b inverts
    std::optional<ChristoffelFamily> alpha;   // of III; present when e inverts
    int order = 0;                            // order at which every field is valid

    const SymForm2& form(FormKind f) const {
        switch (f) {
            case FormKind::I: return I;
            case FormKind::II: return II;
            case FormKind::III: return III;
        }
        return I;
    }
};

namespace detail {

inline SymForm2 build_form(Jet2 f11, Jet2 f12, Jet2 f22) {
    SymForm2 s{std::move(f11), std::move(f12), std::move(f22), Jet2{}, std::nullopt};
    s.det = s.a11 * s.a22 - s.a12 * s.a12;
    try {
        Jet2 dinv = recip(s.det);
        s.inv = std::array<Jet2, 3>{s.a22 * dinv, -(s.a12 * dinv), s.a11 * dinv};
    } catch (const DivisionNearZero&) {
        // leave inv empty; operators gate on admissibility before using it
    }
    return s;
}

// C^k_ij = (1/2) a^km (-a_ij/m + a_im/j + a_jm/i) for a symmetric metric a.
inline ChristoffelFamily build_christoffel(const SymForm2& a) {
    const int m_ord = a.a11.order() - 1;
    if (m_ord < 0) throw OrderExhausted("christoffel: form jets carry no derivative order");
    // partials d[i][j][m] = a_ij/m
    Jet2 d[2][2][2];
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int m = 0; m < 2; ++m) d[i][j][m] = derive(a.at(i, j), m == 0 ? Var::u : Var::v);
    ChristoffelFamily C;
    for (int k = 0; k < 2; ++k)
        for (int i = 0; i < 2; ++i)
            for (int j = i; j < 2; ++j) {
                Jet2 sum = Jet2::constant(m_ord, a.a11.base_u(), a.a11.base_v(), 0.0);
                for (int m = 0; m < 2; ++m) {
                    Jet2 inner = -d[i][j][m] + d[i][m][j] + d[j][m][i];
                    sum += loose_mul(a.inv_at(k, m), inner) * 0.5;
                }
                C.at(k, i, j) = sum;
                C.at(k, j, i) = sum;
            }
    return C;
}

inline void require_admissible(FormKind J, const FrameData& fr, double eps_K) {
    if (J == FormKind::I) return;
    const double K = fr.K.value();
    if (std::abs(K) <= eps_K)
        throw ParabolicPoint("form " + std::string(to_string(J)) + " inadmissible: |K| = " +
                             std::to_string(std::abs(K)) + " <= eps_K");
    if (J == FormKind::II && K < 0)
        throw NonEllipticPoint("form II used as metric at non-elliptic point (K = " +
                               std::to_string(K) + ")");
}

inline const ChristoffelFamily& christoffel_of(const FrameData& fr, FormKind J) {
    switch (J) {
        case FormKind::I: return fr.gamma;
        case FormKind::II:
            if (!fr.pi) throw ParabolicPoint("second-form Christoffels unavailable (b singular)");
            return *fr.pi;
        case FormKind::III:
            if (!fr.alpha) throw ParabolicPoint("third-form Christoffels unavailable (e singular)");
            return *fr.alpha;
    }
    return fr.gamma;
}

} // namespace detail

// Build the full first-order data of a surface at one parameter point.  The
// surface is evaluated at jet order m (m >= 2); derived fields then carry
// their natural orders: x_d and g at m-1, the normal at m-1, b/e/H/K and the
// first-form Christoffels at m-2, and the II/III Christoffel families at m-3
// (hence pass m >= 3 when those are needed).  FrameData.order reports the
// smallest of these, i.e. the order every populated field is valid at.
inline FrameData frame(const SurfaceSpec& surface, Point2 p, int m) {
    if (m < 2) throw BadParameter("frame: jet order must be >= 2, got " + std::to_string(m));
    FrameData fr;
    fr.x = surface.evaluate(p.u, p.v, m);
    for (int c = 0; c < 3; ++c)
        if (fr.x[c].order() != m || fr.x[c].base_u() != p.u || fr.x[c].base_v() != p.v)
            throw BadParameter("frame: surface evaluator returned wrong order or base point");

    fr.x_d[0] = derive(fr.x, Var::u);
    fr.x_d[1] = derive(fr.x, Var::v);
    Vec3Jet x_dd[2][2];
    for (int i = 0; i < 2; ++i) {
        x_dd[i][0] = derive(fr.x_d[i], Var::u);
        x_dd[i][1] = derive(fr.x_d[i], Var::v);
    }

    // first fundamental form (order m-1)
    fr.I = detail::build_form(dot(fr.x_d[0], fr.x_d[0]), dot(fr.x_d[0], fr.x_d[1]),
                              dot(fr.x_d[1], fr.x_d[1]));

    Vec3Jet cr = cross(fr.x_d[0], fr.x_d[1]);
    Jet2 nn = dot(cr, cr);
    if (nn.value() < kRegularityFloor * kRegularityFloor)
        throw IrregularPoint("frame: |x_/1 x x_/2| = " + std::to_string(std::sqrt(nn.value())) +
                             " below regularity floor at (u,v)=(" + std::to_string(p.u) + "," +
                             std::to_string(p.v) + ")");
    if (!fr.I.invertible())
        throw IrregularPoint("frame: first fundamental form not invertible at sampled point");
    fr.n = cr * recip(sqrt(nn));
    fr.n_d[0] = derive(fr.n, Var::u);
    fr.n_d[1] = derive(fr.n, Var::v);

    // second fundamental form b_ij = <n, x_/ij> (order m-2)
    Vec3Jet n_cut = truncated(fr.n, m - 2);
    fr.II = detail::build_form(dot(n_cut, x_dd[0][0]), dot(n_cut, x_dd[0][1]),
                               dot(n_cut, x_dd[1][1]));

    // third fundamental form e_ij = <n_/i, n_/j> (order m-2)
    fr.III = detail::build_form(dot(fr.n_d[0], fr.n_d[0]), dot(fr.n_d[0], fr.n_d[1]),
                                dot(fr.n_d[1], fr.n_d[1]));

    // curvatures: K = det b / det g, 2H = g^ij b_ij (order m-2)
    Jet2 detg_cut = fr.I.det.truncated(m - 2);
    fr.K = fr.II.det * recip(detg_cut);
    Jet2 twoH = Jet2::constant(m - 2, p.u, p.v, 0.0);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            twoH += loose_mul(fr.I.inv_at(i, j), fr.II.at(i, j));
    fr.H = twoH * 0.5;

    fr.gamma = detail::build_christoffel(fr.I);
    if (m >= 3) {
        if (fr.II.invertible()) fr.pi = detail::build_christoffel(fr.II);
        if (fr.III.invertible()) fr.alpha = detail::build_christoffel(fr.III);
    }

    fr.order = std::max(0, m - 3);
    return fr;
}

// First-kind operator of metric J on scalars: a^ij phi_/i psi_/j.
inline Jet2 beltrami1(FormKind J, const FrameData& fr, const Jet2& phi, const Jet2& psi,
                      double eps_K = kDefaultEpsK) {
    detail::require_admissible(J, fr, eps_K);
    const SymForm2& a = fr.form(J);
    Jet2 phi_d[2] = {derive(phi, Var::u), derive(phi, Var::v)};
    Jet2 psi_d[2] = {derive(psi, Var::u), derive(psi, Var::v)};
    const int m = std::min({phi_d[0].order(), psi_d[0].order(), a.inv_at(0, 0).order()});
    Jet2 acc = Jet2::constant(m, phi.base_u(), phi.base_v(), 0.0);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            acc += loose_mul(loose_mul(a.inv_at(i, j), phi_d[i]), psi_d[j]).truncated(m);
    return acc;
}

// componentwise first-kind operator against an E^3-valued field
inline Vec3Jet beltrami1(FormKind J, const FrameData& fr, const Jet2& phi, const Vec3Jet& psi,
                         double eps_K = kDefaultEpsK) {
    return {beltrami1(J, fr, phi, psi[0], eps_K), beltrami1(J, fr, phi, psi[1], eps_K),
            beltrami1(J, fr, phi, psi[2], eps_K)};
}

// Second-kind operator of metric J: -a^ij (f_/ij - C^k_ij f_/k).
inline Jet2 laplacian(FormKind J, const FrameData& fr, const Jet2& f,
                      double eps_K = kDefaultEpsK) {
    detail::require_admissible(J, fr, eps_K);
    const SymForm2& a = fr.form(J);
    const ChristoffelFamily& C = detail::christoffel_of(fr, J);
    if (f.order() < 2) throw OrderExhausted("laplacian: argument jet has order < 2");
    Jet2 f_d[2] = {derive(f, Var::u), derive(f, Var::v)};
    Jet2 f_dd[2][2] = {{derive(f_d[0], Var::u), derive(f_d[0], Var::v)},
                       {derive(f_d[1], Var::u), derive(f_d[1], Var::v)}};
    const int m =
        std::min({f.order() - 2, a.inv_at(0, 0).order(), C.at(0, 0, 0).order()});
    if (m < 0) throw OrderExhausted("laplacian: no truncation order left for the result");
    Jet2 acc = Jet2::constant(m, f.base_u(), f.base_v(), 0.0);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            Jet2 covar = f_dd[i][j].truncated(m);
            for (int k = 0; k < 2; ++k) covar -= loose_mul(C.at(k, i, j), f_d[k]).truncated(m);
            acc += loose_mul(a.inv_at(i, j), covar).truncated(m);
        }
    return -acc;
}

inline Vec3Jet laplacian(FormKind J, const FrameData& fr, const Vec3Jet& f,
                         double eps_K = kDefaultEpsK) {
    return {laplacian(J, fr, f[0], eps_K), laplacian(J, fr, f[1], eps_K),
            laplacian(J, fr, f[2], eps_K)};
}

// Covariant derivative of a symmetric (0,2)-form t under the J-connection:
// result(k, i, j) = t_ij/k - C^m_ik t_mj - C^m_jk t_im.
struct CovariantForm {
    std::array<Jet2, 8> c;
    const Jet2& at(int k, int i, int j) const { return c[4 * k + 2 * i + j]; }
    Jet2& at(int k, int i, int j) { return c[4 * k + 2 * i + j]; }
    double value(int k, int i, int j) const { return at(k, i, j).value(); }
};

inline CovariantForm covariant_d_form(FormKind J, const FrameData& fr, const SymForm2& t,
                                      double eps_K = kDefaultEpsK) {
    detail::require_admissible(J, fr, eps_K);
    const ChristoffelFamily& C = detail::christoffel_of(fr, J);
    CovariantForm out;
    for (int k = 0; k < 2; ++k)
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                Jet2 term = derive(t.at(i, j), k == 0 ? Var::u : Var::v);
                for (int m2 = 0; m2 < 2; ++m2) {
                    term = loose_sub(term, loose_mul(C.at(m2, i, k), t.at(m2, j)));
                    term = loose_sub(term, loose_mul(C.at(m2, j, k), t.at(i, m2)));
                }
                out.at(k, i, j) = term;
            }
    return out;
}

// Difference tensors between the Christoffel families:
//   T(k,i,j)      = Gamma^k_ij - Pi^k_ij
//   Ttilde(k,i,j) = Alpha^k_ij - Pi^k_ij
struct DifferenceTensors {
    ChristoffelFamily T, Ttilde;
};

inline DifferenceTensors t_tensors(const FrameData& fr) {
    if (!fr.pi || !fr.alpha)
        throw ParabolicPoint("t_tensors: needs all three Christoffel families (|K| > 0, m >= 3)");
    DifferenceTensors out;
    for (int k = 0; k < 2; ++k)
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                out.T.at(k, i, j) = loose_sub(fr.gamma.at(k, i, j), fr.pi->at(k, i, j));
                out.Ttilde.at(k, i, j) = loose_sub(fr.alpha->at(k, i, j), fr.pi->at(k, i, j));
            }
    return out;
}

// Values of [f, D f, D^2 f, ..., D^k f] at one parameter point, where D is the
// second-kind operator of form J and f is the position or the unit normal.
// Each application consumes two jet orders and the Christoffels cost three, so
// the surface is evaluated at order 2k+1 (>= 3).
inline std::vector<Vec3> iterated_laplacian(FormKind J, const SurfaceSpec& surface, Point2 p,
                                            FieldKind field, int k,
                                            double eps_K = kDefaultEpsK) {
    if (k < 1) throw BadParameter("iterated_laplacian: k must be >= 1");
    const int m0 = 2 * k + 1;
    FrameData fr = frame(surface, p, m0 < 3 ? 3 : m0);
    detail::require_admissible(J, fr, eps_K);
    Vec3Jet cur = (field == FieldKind::position) ? fr.x : fr.n;
    std::vector<Vec3> out;
    out.reserve(k + 1);
    out.push_back(values(cur));
    for (int s = 1; s <= k; ++s) {
        cur = laplacian(J, fr, cur, eps_K);
        out.push_back(values(cur));
    }
    return out;
}

} // namespace beltrami
