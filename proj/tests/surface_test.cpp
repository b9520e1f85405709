// Surface catalog: parameter validation, regularity, normal orientation,
// offset-surface invariants, rigid translation, and expected-metadata wiring.

#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "beltrami/geometry.hpp"
#include "beltrami/surface.hpp"

using namespace beltrami;

namespace {

Point2 cell_center(const SurfaceSpec& s, int i, int j, int n) {
    return {s.domain.u.lo + (i + 0.5) * s.domain.u.width() / n,
            s.domain.v.lo + (j + 0.5) * s.domain.v.width() / n};
}

} // namespace

TEST(Catalog, ListingIsComplete) {
    const auto entries = catalog_entries();
    ASSERT_GE(entries.size(), 6u);
    std::set<std::string> names;
    for (const auto& e : entries) names.insert(e.name);
    for (const char* want :
         {"sphere", "catenoid", "helicoid", "enneper", "torus", "torus_inner", "monge"})
        EXPECT_TRUE(names.count(want)) << want;
}

TEST(Catalog, ParameterValidation) {
    EXPECT_THROW(catalog_get("klein_bottle"), UnknownSurface);
    EXPECT_THROW(catalog_get("sphere", {{"r", -1.0}}), BadParameter);
    EXPECT_THROW(catalog_get("sphere", {{"radius", 1.0}}), BadParameter);
    EXPECT_THROW(catalog_get("torus", {{"R", 0.4}, {"r", 0.5}}), BadParameter);
    EXPECT_THROW(catalog_get("sphere", {}, "saddle"), BadParameter);
    EXPECT_THROW(catalog_get("monge", {}, "ripple"), BadParameter);
    EXPECT_THROW(catalog_get("monge", {{"r", 1.0}}, "saddle"), BadParameter);
    EXPECT_NO_THROW(catalog_get("torus", {{"R", 3.0}, {"r", 1.0}}));
}

TEST(Catalog, EveryEntryIsRegularOnItsDomain) {
    for (const auto& e : catalog_entries()) {
        std::vector<SurfaceSpec> specs;
        if (e.variants.empty())
            specs.push_back(catalog_get(e.name));
        else
            for (const auto& v : e.variants) specs.push_back(catalog_get(e.name, {}, v));
        for (const auto& s : specs) {
            for (int i = 0; i < 6; ++i)
                for (int j = 0; j < 6; ++j) {
                    const Point2 p = cell_center(s, i, j, 6);
                    EXPECT_NO_THROW({
                        FrameData fr = frame(s, p, 3);
                        EXPECT_GT(fr.I.det.value(), 0.0);
                    }) << s.selector() << " at (" << p.u << ", " << p.v << ")";
                }
        }
    }
}

TEST(Sphere, GeometryAndOrientation) {
    const double r = 2.0;
    SurfaceSpec s = catalog_get("sphere", {{"r", r}});
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) {
            const Point2 p = cell_center(s, i, j, 5);
            FrameData fr = frame(s, p, 3);
            const Vec3 x = values(fr.x), n = values(fr.n);
            EXPECT_NEAR(norm(x), r, 1e-12);
            // orientation pin: inward normal n = -x/r
            for (int c = 0; c < 3; ++c) EXPECT_NEAR(n[c], -x[c] / r, 1e-12);
            EXPECT_NEAR(fr.H.value(), 1.0 / r, 1e-11);
            EXPECT_NEAR(fr.K.value(), 1.0 / (r * r), 1e-11);
        }
}

TEST(Sphere, ExpectedMetadata) {
    SurfaceSpec s = catalog_get("sphere", {{"r", 0.5}});
    ASSERT_TRUE(s.expected.sphere_radius);
    EXPECT_DOUBLE_EQ(*s.expected.sphere_radius, 0.5);
    ASSERT_TRUE(s.expected.h_over_k);
    EXPECT_DOUBLE_EQ(*s.expected.h_over_k, 0.5);
    ASSERT_EQ(s.expected.types.size(), 4u);
    const auto* t = s.expected.find(FormKind::II, FieldKind::position);
    ASSERT_NE(t, nullptr);
    EXPECT_EQ(t->degree, 1);
    ASSERT_EQ(t->eigenvalues.size(), 1u);
    EXPECT_DOUBLE_EQ(t->eigenvalues[0], 4.0); // 2/r
    EXPECT_FALSE(t->null_type);
}

TEST(Minimal, CatalogSurfacesAreMinimal) {
    for (const char* name : {"catenoid", "helicoid", "enneper"}) {
        SurfaceSpec s = catalog_get(name);
        ASSERT_TRUE(s.expected.is_minimal) << name;
        EXPECT_TRUE(*s.expected.is_minimal);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                const Point2 p = cell_center(s, i, j, 4);
                FrameData fr = frame(s, p, 3);
                EXPECT_NEAR(fr.H.value(), 0.0, 1e-10) << name;
                EXPECT_LT(fr.K.value(), 0.0) << name;
            }
        const auto* t = s.expected.find(FormKind::III, FieldKind::position);
        ASSERT_NE(t, nullptr) << name;
        EXPECT_EQ(t->degree, 1);
        EXPECT_TRUE(t->null_type);
    }
}

TEST(Torus, CurvatureSignsAndFrozenValues) {
    SurfaceSpec outer = catalog_get("torus");
    // outer-equator point: u = 0 (tube angle), any v
    FrameData fr = frame(outer, {0.0, 1.0}, 3);
    // frozen oracle values for R=2, r=0.5 at the outer equator
    EXPECT_NEAR(fr.H.value(), 1.2, 1e-9);
    EXPECT_NEAR(fr.K.value(), 0.8, 1e-9);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) {
            const Point2 p = cell_center(outer, i, j, 5);
            EXPECT_GT(frame(outer, p, 2).K.value(), 0.0);
        }
    SurfaceSpec inner = catalog_get("torus_inner");
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) {
            const Point2 p = cell_center(inner, i, j, 5);
            EXPECT_LT(frame(inner, p, 2).K.value(), 0.0);
        }
    const auto* t = outer.expected.find(FormKind::III, FieldKind::position);
    ASSERT_NE(t, nullptr);
    EXPECT_EQ(t->kind, ExpectedKind::not_finite_type);
}

TEST(Monge, Variants) {
    SurfaceSpec zero = catalog_get("monge", {}, "zero");
    FrameData fz = frame(zero, {0.3, -0.4}, 3);
    EXPECT_NEAR(fz.H.value(), 0.0, 1e-14);
    EXPECT_NEAR(fz.K.value(), 0.0, 1e-14);

    SurfaceSpec par = catalog_get("monge", {}, "paraboloid");
    FrameData fp = frame(par, {0.0, 0.0}, 3);
    // frozen oracle: at the origin H = 2, K = 4, n = (0, 0, 1)
    EXPECT_NEAR(fp.H.value(), 2.0, 1e-12);
    EXPECT_NEAR(fp.K.value(), 4.0, 1e-12);
    const Vec3 n = values(fp.n);
    EXPECT_NEAR(n[0], 0.0, 1e-14);
    EXPECT_NEAR(n[1], 0.0, 1e-14);
    EXPECT_NEAR(n[2], 1.0, 1e-14);

    SurfaceSpec sad = catalog_get("monge", {}, "saddle");
    FrameData fs = frame(sad, {0.0, 0.0}, 3);
    EXPECT_NEAR(fs.H.value(), 0.0, 1e-13);
    EXPECT_NEAR(fs.K.value(), -4.0, 1e-12);

    SurfaceSpec bump = catalog_get("monge", {}, "bump");
    EXPECT_EQ(bump.k_class, KClass::mixed);
    bool pos = false, neg = false;
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) {
            const double K = frame(bump, cell_center(bump, i, j, 8), 2).K.value();
            pos = pos || K > 1e-6;
            neg = neg || K < -1e-6;
        }
    EXPECT_TRUE(pos);
    EXPECT_TRUE(neg);
}

TEST(Parallel, SharesTheNormalAndShiftsThePoint) {
    SurfaceSpec base = catalog_get("catenoid");
    const double rho = 0.4;
    SurfaceSpec par = make_parallel(base, rho);
    ASSERT_TRUE(par.is_parallel());
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const Point2 p = cell_center(base, i, j, 4);
            FrameData fb = frame(base, p, 3);
            FrameData fp = frame(par, p, 3);
            const Vec3 xb = values(fb.x), xp = values(fp.x);
            const Vec3 nb = values(fb.n), np = values(fp.n);
            for (int c = 0; c < 3; ++c) {
                EXPECT_NEAR(xp[c], xb[c] + rho * nb[c], 1e-12);
                EXPECT_NEAR(np[c], nb[c], 1e-12);
            }
        }
}

TEST(Parallel, OffsetOfOffsetFlattens) {
    SurfaceSpec base = catalog_get("helicoid");
    SurfaceSpec two_step = make_parallel(make_parallel(base, 0.2), 0.3);
    SurfaceSpec one_step = make_parallel(base, 0.5);
    EXPECT_DOUBLE_EQ(two_step.parallel_rho, 0.5);
    EXPECT_EQ(two_step.selector(), one_step.selector());
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const Point2 p = cell_center(base, i, j, 3);
            const Vec3 a = values(two_step.evaluate(p.u, p.v, 0));
            const Vec3 b = values(one_step.evaluate(p.u, p.v, 0));
            for (int c = 0; c < 3; ++c) EXPECT_NEAR(a[c], b[c], 1e-10);
        }
}

TEST(Parallel, SphereShrinksTowardTheCenter) {
    SurfaceSpec par = make_parallel(catalog_get("sphere", {{"r", 1.0}}), 0.25);
    ASSERT_TRUE(par.expected.sphere_radius);
    EXPECT_NEAR(*par.expected.sphere_radius, 0.75, 1e-15);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const Point2 p = cell_center(par, i, j, 4);
            EXPECT_NEAR(norm(values(par.evaluate(p.u, p.v, 0))), 0.75, 1e-12);
        }
    const auto* t = par.expected.find(FormKind::II, FieldKind::position);
    ASSERT_NE(t, nullptr);
    ASSERT_EQ(t->eigenvalues.size(), 1u);
    EXPECT_NEAR(t->eigenvalues[0], 2.0 / 0.75, 1e-14);
}

TEST(Parallel, InadmissibleOffsetIsRejected) {
    // at rho = r the offset of a sphere collapses to the center
    EXPECT_THROW(make_parallel(catalog_get("sphere", {{"r", 1.0}}), 1.0), InadmissibleOffset);
}

TEST(Parallel, MinimalBaseExpectations) {
    SurfaceSpec par = make_parallel(catalog_get("enneper"), 0.2);
    ASSERT_TRUE(par.expected.h_over_k);
    EXPECT_NEAR(*par.expected.h_over_k, -0.2, 1e-15);
    const auto* t = par.expected.find(FormKind::III, FieldKind::position);
    ASSERT_NE(t, nullptr);
    EXPECT_EQ(t->degree, 2);
    EXPECT_TRUE(t->null_type);
    ASSERT_EQ(t->eigenvalues.size(), 2u);
    EXPECT_DOUBLE_EQ(t->eigenvalues[0], 0.0);
    EXPECT_DOUBLE_EQ(t->eigenvalues[1], 2.0);
    const auto* tn = par.expected.find(FormKind::III, FieldKind::normal);
    ASSERT_NE(tn, nullptr);
    EXPECT_EQ(tn->degree, 1);
    ASSERT_EQ(tn->eigenvalues.size(), 1u);
    EXPECT_DOUBLE_EQ(tn->eigenvalues[0], 2.0);
}

TEST(Translate, MovesPointsAndMetadata) {
    const Vec3 t{0.3, -1.2, 2.0};
    SurfaceSpec moved = translate(catalog_get("sphere", {{"r", 1.0}}), t);
    ASSERT_TRUE(moved.expected.sphere_center);
    for (int c = 0; c < 3; ++c) EXPECT_DOUBLE_EQ((*moved.expected.sphere_center)[c], t[c]);
    const Point2 p{1.0, 1.2};
    const Vec3 a = values(catalog_get("sphere", {{"r", 1.0}}).evaluate(p.u, p.v, 0));
    const Vec3 b = values(moved.evaluate(p.u, p.v, 0));
    for (int c = 0; c < 3; ++c) EXPECT_NEAR(b[c], a[c] + t[c], 1e-14);

    // translating an offset surface translates its base too
    SurfaceSpec par = translate(make_parallel(catalog_get("sphere", {{"r", 1.0}}), 0.25), t);
    ASSERT_TRUE(par.parallel_base);
    const Vec3 c0 = values(par.parallel_base->evaluate(p.u, p.v, 0));
    for (int c = 0; c < 3; ++c) EXPECT_NEAR(c0[c], a[c] + t[c], 1e-14);
}

TEST(Selector, CanonicalStrings) {
    EXPECT_EQ(catalog_get("sphere", {{"r", 2.0}}).selector(), "sphere:r=2");
    EXPECT_EQ(catalog_get("monge", {}, "saddle").selector(), "monge:saddle");
    EXPECT_EQ(catalog_get("torus").selector(), "torus:R=2,r=0.5");
    EXPECT_EQ(make_parallel(catalog_get("catenoid"), 0.5).selector(),
              "parallel:catenoid:a=1,rho=0.5");
}

TEST(Frame, RejectsMisbehavedEvaluators) {
    SurfaceSpec bad = catalog_get("sphere");
    bad.evaluate = [](double u, double v, int order) -> Vec3Jet {
        // wrong order on purpose
        return {Jet2::constant(order + 1, u, v, 1.0), Jet2::constant(order + 1, u, v, 0.0),
                Jet2::constant(order + 1, u, v, 0.0)};
    };
    EXPECT_THROW(frame(bad, {1.0, 1.0}, 3), BadParameter);

    SurfaceSpec degenerate = catalog_get("sphere");
    degenerate.evaluate = [](double u, double v, int order) -> Vec3Jet {
        // collapses to a point: irregular everywhere
        return {Jet2::constant(order, u, v, 1.0), Jet2::constant(order, u, v, 2.0),
                Jet2::constant(order, u, v, 3.0)};
    };
    EXPECT_THROW(frame(degenerate, {1.0, 1.0}, 3), IrregularPoint);
    EXPECT_THROW(frame(catalog_get("sphere"), {1.0, 1.0}, 1), BadParameter);
}
