// Frame machinery: fundamental forms, Christoffel families, first- and
// second-kind operators, covariant derivatives, difference tensors, and
// iterated operator sequences — checked against frozen closed-form values
// and structural relations that hold for every regular surface.

#include <gtest/gtest.h>

#include <cmath>

#include "beltrami/geometry.hpp"
#include "beltrami/surface.hpp"

using namespace beltrami;

namespace {

Point2 cell_center(const SurfaceSpec& s, int i, int j, int n) {
    return {s.domain.u.lo + (i + 0.5) * s.domain.u.width() / n,
            s.domain.v.lo + (j + 0.5) * s.domain.v.width() / n};
}

} // namespace

TEST(Frozen, SphereFrameAndChristoffels) {
    const double r = 2.0;
    SurfaceSpec s = catalog_get("sphere", {{"r", r}});
    const Point2 p{0.7, 1.1}; // u = azimuth, v = polar angle
    FrameData fr = frame(s, p, 4);

    EXPECT_NEAR(fr.H.value(), 0.5, 1e-13);
    EXPECT_NEAR(fr.K.value(), 0.25, 1e-13);

    // umbilic: II = I / r and III = I / r^2, entrywise
    EXPECT_NEAR(fr.II.a11.value(), fr.I.a11.value() / r, 1e-12);
    EXPECT_NEAR(fr.II.a12.value(), fr.I.a12.value() / r, 1e-12);
    EXPECT_NEAR(fr.II.a22.value(), fr.I.a22.value() / r, 1e-12);
    EXPECT_NEAR(fr.III.a11.value(), fr.I.a11.value() / (r * r), 1e-12);
    EXPECT_NEAR(fr.III.a12.value(), fr.I.a12.value() / (r * r), 1e-12);
    EXPECT_NEAR(fr.III.a22.value(), fr.I.a22.value() / (r * r), 1e-12);

    // closed-form metric for x = r (sin v cos u, sin v sin u, cos v)
    const double sv = std::sin(p.v), cv = std::cos(p.v);
    EXPECT_NEAR(fr.I.a11.value(), r * r * sv * sv, 1e-12);
    EXPECT_NEAR(fr.I.a12.value(), 0.0, 1e-12);
    EXPECT_NEAR(fr.I.a22.value(), r * r, 1e-12);

    // nonzero Christoffels of I: C^u_uv = cot v, C^v_uu = -sin v cos v
    EXPECT_NEAR(fr.gamma.at(0, 0, 1).value(), cv / sv, 1e-12);
    EXPECT_NEAR(fr.gamma.at(0, 1, 0).value(), cv / sv, 1e-12);
    EXPECT_NEAR(fr.gamma.at(1, 0, 0).value(), -sv * cv, 1e-12);
    EXPECT_NEAR(fr.gamma.at(0, 0, 0).value(), 0.0, 1e-12);
    EXPECT_NEAR(fr.gamma.at(1, 0, 1).value(), 0.0, 1e-12);
    EXPECT_NEAR(fr.gamma.at(1, 1, 1).value(), 0.0, 1e-12);

    // on an umbilic surface all three families coincide
    ASSERT_TRUE(fr.pi && fr.alpha);
    for (int k = 0; k < 2; ++k)
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                EXPECT_NEAR(fr.pi->at(k, i, j).value(), fr.gamma.at(k, i, j).value(), 1e-11);
                EXPECT_NEAR(fr.alpha->at(k, i, j).value(), fr.gamma.at(k, i, j).value(), 1e-11);
            }
}

TEST(Frozen, TorusOuterEquator) {
    SurfaceSpec s = catalog_get("torus"); // R = 2, r = 0.5
    FrameData fr = frame(s, {0.0, 1.0}, 3);
    EXPECT_NEAR(fr.H.value(), 1.2, 1e-12);
    EXPECT_NEAR(fr.K.value(), 0.8, 1e-12);
    EXPECT_NEAR(fr.I.a11.value(), 0.25, 1e-12);  // r^2
    EXPECT_NEAR(fr.I.a12.value(), 0.0, 1e-12);
    EXPECT_NEAR(fr.I.a22.value(), 6.25, 1e-12);  // (R + r)^2
    EXPECT_NEAR(fr.II.a11.value(), 0.5, 1e-12);  // tube curvature 1/r times r^2
    EXPECT_NEAR(fr.II.a12.value(), 0.0, 1e-12);
    EXPECT_NEAR(fr.II.a22.value(), 2.5, 1e-12);  // (R + r)^2 / (R + r)
    EXPECT_NEAR(fr.III.a11.value(), 1.0, 1e-12);
    EXPECT_NEAR(fr.III.a22.value(), 1.0, 1e-12);
}

TEST(Structure, ThirdFormEqualsSquaredShapeForm) {
    for (const char* name : {"catenoid", "torus", "enneper", "helicoid"}) {
        SurfaceSpec s = catalog_get(name);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                FrameData fr = frame(s, cell_center(s, i, j, 4), 3);
                // e = b g^{-1} b, checked entrywise at the point
                double g[2][2] = {{fr.I.a11.value(), fr.I.a12.value()},
                                  {fr.I.a12.value(), fr.I.a22.value()}};
                double b[2][2] = {{fr.II.a11.value(), fr.II.a12.value()},
                                  {fr.II.a12.value(), fr.II.a22.value()}};
                const double dg = g[0][0] * g[1][1] - g[0][1] * g[1][0];
                double gi[2][2] = {{g[1][1] / dg, -g[0][1] / dg}, {-g[1][0] / dg, g[0][0] / dg}};
                double e[2][2] = {};
                for (int a = 0; a < 2; ++a)
                    for (int c = 0; c < 2; ++c)
                        for (int m1 = 0; m1 < 2; ++m1)
                            for (int m2 = 0; m2 < 2; ++m2)
                                e[a][c] += b[a][m1] * gi[m1][m2] * b[m2][c];
                EXPECT_NEAR(fr.III.a11.value(), e[0][0], 1e-10) << name;
                EXPECT_NEAR(fr.III.a12.value(), e[0][1], 1e-10) << name;
                EXPECT_NEAR(fr.III.a22.value(), e[1][1], 1e-10) << name;
            }
    }
}

TEST(Structure, TraceRelations) {
    for (const char* name : {"torus", "catenoid", "enneper"}) {
        SurfaceSpec s = catalog_get(name);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                FrameData fr = frame(s, cell_center(s, i, j, 3), 3);
                const double H = fr.H.value(), K = fr.K.value();
                double tr_b = 0.0, tr_e = 0.0;
                for (int a = 0; a < 2; ++a)
                    for (int c = 0; c < 2; ++c) {
                        tr_b += fr.I.inv_at(a, c).value() * fr.II.at(a, c).value();
                        tr_e += fr.I.inv_at(a, c).value() * fr.III.at(a, c).value();
                    }
                EXPECT_NEAR(tr_b, 2.0 * H, 1e-11) << name;            // g^{ij} b_ij
                EXPECT_NEAR(tr_e, 4.0 * H * H - 2.0 * K, 1e-10) << name; // g^{ij} e_ij
            }
    }
}

TEST(Structure, NormalDerivativesAreShapeImages) {
    // dn_i = -b_i^k x_k (values)
    for (const char* name : {"torus", "catenoid", "sphere"}) {
        SurfaceSpec s = catalog_get(name);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                FrameData fr = frame(s, cell_center(s, i, j, 3), 3);
                double gi[2][2] = {{fr.I.inv_at(0, 0).value(), fr.I.inv_at(0, 1).value()},
                                   {fr.I.inv_at(1, 0).value(), fr.I.inv_at(1, 1).value()}};
                double b[2][2] = {{fr.II.a11.value(), fr.II.a12.value()},
                                  {fr.II.a12.value(), fr.II.a22.value()}};
                for (int a = 0; a < 2; ++a) {
                    Vec3 lhs = values(fr.n_d[a]);
                    Vec3 rhs{0, 0, 0};
                    for (int k = 0; k < 2; ++k) {
                        double coef = 0.0;
                        for (int m1 = 0; m1 < 2; ++m1) coef += b[a][m1] * gi[m1][k];
                        const Vec3 xk = values(fr.x_d[k]);
                        for (int c = 0; c < 3; ++c) rhs[c] -= coef * xk[c];
                    }
                    for (int c = 0; c < 3; ++c) EXPECT_NEAR(lhs[c], rhs[c], 1e-10) << name;
                }
            }
    }
}

TEST(Operators, FlatPlaneReducesToEuclidean) {
    SurfaceSpec s = catalog_get("monge", {}, "zero");
    const Point2 p{0.3, -0.2};
    FrameData fr = frame(s, p, 5);
    Jet2 U = Jet2::variable_u(5, p.u, p.v), V = Jet2::variable_v(5, p.u, p.v);

    // second-kind operator sign convention: D(u^2 + v^2) = -4 on the flat plane
    EXPECT_NEAR(laplacian(FormKind::I, fr, U * U + V * V).value(), -4.0, 1e-12);
    EXPECT_NEAR(laplacian(FormKind::I, fr, U).value(), 0.0, 1e-13);
    EXPECT_NEAR(laplacian(FormKind::I, fr, V * 3.0 - U).value(), 0.0, 1e-13);

    // first-kind operator is the Euclidean gradient pairing
    EXPECT_NEAR(beltrami1(FormKind::I, fr, U, U).value(), 1.0, 1e-13);
    EXPECT_NEAR(beltrami1(FormKind::I, fr, U, V).value(), 0.0, 1e-13);
    EXPECT_NEAR(beltrami1(FormKind::I, fr, V, V).value(), 1.0, 1e-13);
    EXPECT_NEAR(beltrami1(FormKind::I, fr, U * U, V + U).value(), 2.0 * p.u, 1e-12);
}

TEST(Operators, ProductRuleForEveryForm) {
    // D(phi psi) = phi D psi + psi D phi - 2 grad-pairing(phi, psi),
    // for the operator of each admissible form
    SurfaceSpec s = catalog_get("torus");
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const Point2 p = cell_center(s, i, j, 3);
            FrameData fr = frame(s, p, 6);
            Jet2 U = Jet2::variable_u(6, p.u, p.v), V = Jet2::variable_v(6, p.u, p.v);
            Jet2 phi = U * U + V, psi = sin(V) + U;
            for (FormKind J : {FormKind::I, FormKind::II, FormKind::III}) {
                const double lhs = laplacian(J, fr, loose_mul(phi, psi)).value();
                const double rhs = phi.value() * laplacian(J, fr, psi).value() +
                                   psi.value() * laplacian(J, fr, phi).value() -
                                   2.0 * beltrami1(J, fr, phi, psi).value();
                EXPECT_NEAR(lhs, rhs, 1e-9 * std::max(1.0, std::abs(lhs)));
            }
        }
}

TEST(Covariant, EachFormIsParallelUnderItsOwnConnection) {
    for (const char* name : {"torus", "catenoid"}) {
        SurfaceSpec s = catalog_get(name);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                FrameData fr = frame(s, cell_center(s, i, j, 3), 4);
                CovariantForm dg = covariant_d_form(FormKind::I, fr, fr.I);
                CovariantForm de = covariant_d_form(FormKind::III, fr, fr.III);
                for (int k = 0; k < 2; ++k)
                    for (int a = 0; a < 2; ++a)
                        for (int c = 0; c < 2; ++c) {
                            EXPECT_NEAR(dg.value(k, a, c), 0.0, 1e-10) << name;
                            EXPECT_NEAR(de.value(k, a, c), 0.0, 1e-10) << name;
                        }
                // K > 0 only: the middle form under its own connection
                if (fr.K.value() > 1e-6) {
                    CovariantForm db = covariant_d_form(FormKind::II, fr, fr.II);
                    for (int k = 0; k < 2; ++k)
                        for (int a = 0; a < 2; ++a)
                            for (int c = 0; c < 2; ++c)
                                EXPECT_NEAR(db.value(k, a, c), 0.0, 1e-10) << name;
                }
            }
    }
}

TEST(Covariant, CodazziSymmetry) {
    // (d^I b)(k, i, j) is fully symmetric in (j, k)
    for (const char* name : {"catenoid", "torus", "enneper"}) {
        SurfaceSpec s = catalog_get(name);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                FrameData fr = frame(s, cell_center(s, i, j, 3), 4);
                CovariantForm db = covariant_d_form(FormKind::I, fr, fr.II);
                for (int a = 0; a < 2; ++a) {
                    EXPECT_NEAR(db.value(0, a, 1), db.value(1, a, 0), 1e-10) << name;
                    EXPECT_NEAR(db.value(1, a, 0), db.value(0, a, 1), 1e-10) << name;
                }
            }
    }
}

TEST(Tensors, DifferenceFamiliesAreOpposite) {
    // Alpha - Pi = -(Gamma - Pi) wherever all three families exist
    for (const char* name : {"torus", "catenoid", "torus_inner"}) {
        SurfaceSpec s = catalog_get(name);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                FrameData fr = frame(s, cell_center(s, i, j, 3), 3);
                DifferenceTensors dt = t_tensors(fr);
                for (int k = 0; k < 2; ++k)
                    for (int a = 0; a < 2; ++a)
                        for (int c = 0; c < 2; ++c)
                            EXPECT_NEAR(dt.Ttilde.at(k, a, c).value(),
                                        -dt.T.at(k, a, c).value(), 1e-9)
                                << name;
            }
    }
    // umbilic case: both difference tensors vanish
    FrameData fr = frame(catalog_get("sphere"), {0.9, 1.3}, 3);
    DifferenceTensors dt = t_tensors(fr);
    for (int k = 0; k < 2; ++k)
        for (int a = 0; a < 2; ++a)
            for (int c = 0; c < 2; ++c) {
                EXPECT_NEAR(dt.T.at(k, a, c).value(), 0.0, 1e-11);
                EXPECT_NEAR(dt.Ttilde.at(k, a, c).value(), 0.0, 1e-11);
            }
}

TEST(Iterated, SphereEigenSequences) {
    const double r = 0.5, lam = 2.0 / r; // 4
    SurfaceSpec s = catalog_get("sphere", {{"r", r}});
    const Point2 p{1.9, 0.8};
    auto seq = iterated_laplacian(FormKind::II, s, p, FieldKind::position, 2);
    ASSERT_EQ(seq.size(), 3u);
    for (int c = 0; c < 3; ++c) {
        EXPECT_NEAR(seq[1][c], lam * seq[0][c], 1e-9);
        EXPECT_NEAR(seq[2][c], lam * lam * seq[0][c], 1e-8);
    }
    auto nseq = iterated_laplacian(FormKind::III, s, p, FieldKind::normal, 2);
    for (int c = 0; c < 3; ++c) {
        EXPECT_NEAR(nseq[1][c], 2.0 * nseq[0][c], 1e-10);
        EXPECT_NEAR(nseq[2][c], 4.0 * nseq[0][c], 1e-9);
    }
}

TEST(Iterated, GaussMapSequenceOnEverySurface) {
    // D^III n = 2 n pointwise, independent of the surface
    for (const char* name : {"torus", "torus_inner", "catenoid", "helicoid", "enneper"}) {
        SurfaceSpec s = catalog_get(name);
        const Point2 p = cell_center(s, 1, 2, 4);
        auto seq = iterated_laplacian(FormKind::III, s, p, FieldKind::normal, 1);
        for (int c = 0; c < 3; ++c) EXPECT_NEAR(seq[1][c], 2.0 * seq[0][c], 1e-9) << name;
    }
}

TEST(Iterated, MinimalSurfacesKillPositionUnderThirdForm) {
    for (const char* name : {"catenoid", "helicoid", "enneper"}) {
        SurfaceSpec s = catalog_get(name);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                auto seq = iterated_laplacian(FormKind::III, s, cell_center(s, i, j, 3),
                                              FieldKind::position, 1);
                for (int c = 0; c < 3; ++c) EXPECT_NEAR(seq[1][c], 0.0, 1e-9) << name;
            }
    }
}

TEST(Guards, AdmissibilityAndParameters) {
    SurfaceSpec flat = catalog_get("monge", {}, "zero");
    EXPECT_THROW(t_tensors(frame(flat, {0.2, 0.1}, 3)), ParabolicPoint);
    EXPECT_THROW(
        iterated_laplacian(FormKind::III, flat, {0.2, 0.1}, FieldKind::normal, 1),
        ParabolicPoint);
    SurfaceSpec sad = catalog_get("monge", {}, "saddle");
    EXPECT_THROW(
        iterated_laplacian(FormKind::II, sad, {0.0, 0.0}, FieldKind::position, 1),
        NonEllipticPoint);
    EXPECT_NO_THROW(
        iterated_laplacian(FormKind::III, sad, {0.0, 0.0}, FieldKind::position, 1));
    EXPECT_THROW(
        iterated_laplacian(FormKind::I, catalog_get("sphere"), {1.0, 1.0}, FieldKind::position, 0),
        BadParameter);
}

TEST(Operators, SecondKindMatchesDivergenceForm) {
    // D f = -(1/sqrt(det g)) d_i( sqrt(det g) g^{ij} d_j f ) for J = I;
    // evaluated through jets by expanding the divergence with derive()
    SurfaceSpec s = catalog_get("catenoid");
    const Point2 p{2.1, 0.4};
    const int m = 6;
    FrameData fr = frame(s, p, m);
    Jet2 U = Jet2::variable_u(m, p.u, p.v), V = Jet2::variable_v(m, p.u, p.v);
    Jet2 f = sin(U) * V + U * V * V;

    Jet2 sq = sqrt(fr.I.det);
    Jet2 acc = Jet2::constant(m - 3, p.u, p.v, 0.0);
    for (int i = 0; i < 2; ++i) {
        Jet2 flux = Jet2::constant(m - 2, p.u, p.v, 0.0);
        for (int j = 0; j < 2; ++j)
            flux += loose_mul(loose_mul(sq, fr.I.inv_at(i, j)),
                              derive(f, j == 0 ? Var::u : Var::v))
                        .truncated(m - 2);
        acc += derive(flux, i == 0 ? Var::u : Var::v).truncated(m - 3);
    }
    const double divergence_form = -(loose_mul(recip(sq), acc)).value();
    const double direct = laplacian(FormKind::I, fr, f).value();
    EXPECT_NEAR(direct, divergence_form, 1e-10 * std::max(1.0, std::abs(direct)));
}
