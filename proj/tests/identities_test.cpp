// Residual checks for the catalog of structural identities: verdict tiers,
// scope gating, typed skip reasons, and tolerance behavior across surfaces.

#include <gtest/gtest.h>

#include <set>
#include <string>

#include "beltrami/identities.hpp"
#include "beltrami/surface.hpp"

using namespace beltrami;

namespace {

// checks that need an invertible second/third form
const std::set<std::string> kNonparabolicTier = {"ID04", "ID12", "ID13", "ID16", "ID17",
                                                 "ID18", "ID23", "ID24", "ID26", "ID27"};
// checks that additionally need K > 0
const std::set<std::string> kEllipticTier = {"ID02", "ID03", "ID05", "ID07", "ID08",
                                             "ID09", "ID10", "ID11", "ID14", "ID15",
                                             "ID19", "ID21", "ID22"};
const std::set<std::string> kAlwaysOn = {"ID01", "ID06", "ID20", "ID25"};

} // namespace

TEST(Registry, TwentySevenUniqueChecks) {
    const auto& reg = identity_registry();
    ASSERT_EQ(reg.size(), 27u);
    std::set<std::string> ids;
    for (const auto& c : reg) {
        ids.insert(c.id);
        EXPECT_GT(std::string(c.description).size(), 10u) << c.id;
    }
    EXPECT_EQ(ids.size(), 27u);
    EXPECT_TRUE(ids.count("ID01"));
    EXPECT_TRUE(ids.count("ID27"));
    // tier bookkeeping matches the registry's own flags
    for (const auto& c : reg) {
        if (kAlwaysOn.count(c.id)) EXPECT_EQ(c.req, CheckReq::none) << c.id;
        if (kNonparabolicTier.count(c.id)) EXPECT_EQ(c.req, CheckReq::nonparabolic) << c.id;
        if (kEllipticTier.count(c.id)) EXPECT_EQ(c.req, CheckReq::elliptic) << c.id;
    }
}

TEST(Verdicts, SphereEverythingPasses) {
    IdentityOptions opt;
    opt.order = 5;
    IdentityReport rep = run_identities(catalog_get("sphere"), {8, 8}, opt);
    ASSERT_EQ(rep.checks.size(), 27u);
    for (const auto& c : rep.checks) {
        if (c.id == "ID26" || c.id == "ID27") {
            // the sphere itself is not an offset surface
            EXPECT_EQ(c.verdict, Verdict::SKIP);
            EXPECT_EQ(c.skip_reason, "NotAParallelSurface");
            continue;
        }
        EXPECT_EQ(c.verdict, Verdict::PASS) << c.id << " reason=" << c.skip_reason;
        EXPECT_LT(c.max_residual, 1e-8) << c.id;
        EXPECT_GT(c.evaluated, 0) << c.id;
    }
    EXPECT_TRUE(rep.all_pass());
    // the one sphere-scoped check really ran on the sphere
    const CheckResult* support = rep.find("ID25");
    ASSERT_NE(support, nullptr);
    EXPECT_EQ(support->verdict, Verdict::PASS);
}

TEST(Verdicts, TranslatedSphereLosesOnlyTheOriginScopedCheck) {
    SurfaceSpec moved = translate(catalog_get("sphere"), {0.3, -1.2, 2.0});
    IdentityReport rep = run_identities(moved, {6, 6});
    for (const auto& c : rep.checks) {
        if (c.id == "ID25") {
            EXPECT_EQ(c.verdict, Verdict::SKIP);
            EXPECT_EQ(c.skip_reason, "NotAnOriginSphere");
        } else if (c.id == "ID26" || c.id == "ID27") {
            EXPECT_EQ(c.verdict, Verdict::SKIP);
            EXPECT_EQ(c.skip_reason, "NotAParallelSurface");
        } else {
            EXPECT_EQ(c.verdict, Verdict::PASS) << c.id;
        }
    }
}

TEST(Verdicts, FlatPlaneSkipsEverythingAboveTheMetricTier) {
    IdentityReport rep = run_identities(catalog_get("monge", {}, "zero"), {5, 5});
    for (const auto& c : rep.checks) {
        if (c.id == "ID25") {
            EXPECT_EQ(c.verdict, Verdict::SKIP);
            EXPECT_EQ(c.skip_reason, "NotAnOriginSphere");
        } else if (c.id == "ID26" || c.id == "ID27") {
            EXPECT_EQ(c.skip_reason, "NotAParallelSurface");
        } else if (kAlwaysOn.count(c.id)) {
            EXPECT_EQ(c.verdict, Verdict::PASS) << c.id;
            EXPECT_LT(c.max_residual, 1e-10) << c.id;
        } else {
            EXPECT_EQ(c.verdict, Verdict::SKIP) << c.id;
            EXPECT_EQ(c.skip_reason, "ParabolicPoint") << c.id;
            EXPECT_GT(c.skipped, 0) << c.id;
        }
    }
    EXPECT_TRUE(rep.all_pass()); // skips are not failures
}

TEST(Verdicts, SaddleSeparatesTheCurvatureTiers) {
    IdentityReport rep = run_identities(catalog_get("monge", {}, "saddle"), {6, 6});
    for (const auto& c : rep.checks) {
        if (kEllipticTier.count(c.id)) {
            EXPECT_EQ(c.verdict, Verdict::SKIP) << c.id;
            EXPECT_EQ(c.skip_reason, "NonEllipticPoint") << c.id;
        } else if (c.id == "ID26" || c.id == "ID27" || c.id == "ID25") {
            EXPECT_EQ(c.verdict, Verdict::SKIP) << c.id;
        } else {
            // K < 0 everywhere: II/III both invert, nonparabolic tier runs
            EXPECT_EQ(c.verdict, Verdict::PASS) << c.id << " " << c.skip_reason;
            EXPECT_LT(c.max_residual, 1e-8) << c.id;
        }
    }
}

TEST(Verdicts, TorusRunsEveryUnscopedCheck) {
    IdentityReport rep = run_identities(catalog_get("torus"), {8, 8});
    int passed = 0;
    for (const auto& c : rep.checks) {
        if (c.id == "ID25" || c.id == "ID26" || c.id == "ID27") {
            EXPECT_EQ(c.verdict, Verdict::SKIP) << c.id;
            continue;
        }
        EXPECT_EQ(c.verdict, Verdict::PASS) << c.id << " res=" << c.max_residual;
        EXPECT_LT(c.max_residual, 1e-8) << c.id;
        ++passed;
    }
    EXPECT_EQ(passed, 24);
}

TEST(Verdicts, ParallelSurfaceChecksItsBase) {
    SurfaceSpec par = make_parallel(catalog_get("catenoid"), 0.5);
    IdentityReport rep = run_identities(par, {6, 6});
    const CheckResult* c26 = rep.find("ID26");
    const CheckResult* c27 = rep.find("ID27");
    ASSERT_NE(c26, nullptr);
    ASSERT_NE(c27, nullptr);
    EXPECT_EQ(c26->verdict, Verdict::PASS) << c26->skip_reason << " res=" << c26->max_residual;
    EXPECT_EQ(c27->verdict, Verdict::PASS) << c27->skip_reason << " res=" << c27->max_residual;
    EXPECT_LT(c26->max_residual, 1e-8);
    EXPECT_LT(c27->max_residual, 1e-8);
    // offset of a minimal surface at rho=0.5 keeps K < 0 here: elliptic tier skips
    const CheckResult* c02 = rep.find("ID02");
    ASSERT_NE(c02, nullptr);
    EXPECT_EQ(c02->verdict, Verdict::SKIP);
    EXPECT_EQ(c02->skip_reason, "NonEllipticPoint");
    EXPECT_TRUE(rep.all_pass());
}

TEST(Verdicts, TranslationDoesNotChangeAnyVerdict) {
    IdentityReport a = run_identities(catalog_get("torus"), {5, 5});
    IdentityReport b = run_identities(translate(catalog_get("torus"), {5.0, -3.0, 1.5}), {5, 5});
    ASSERT_EQ(a.checks.size(), b.checks.size());
    for (size_t i = 0; i < a.checks.size(); ++i) {
        EXPECT_EQ(a.checks[i].verdict, b.checks[i].verdict) << a.checks[i].id;
        if (a.checks[i].verdict == Verdict::PASS)
            EXPECT_LT(b.checks[i].max_residual, 1e-8) << a.checks[i].id;
    }
}

TEST(Options, FilterSelectsAndValidates) {
    IdentityOptions opt;
    opt.check_filter = {"ID07", "ID01"};
    IdentityReport rep = run_identities(catalog_get("sphere"), {4, 4}, opt);
    ASSERT_EQ(rep.checks.size(), 2u);
    EXPECT_NE(rep.find("ID01"), nullptr);
    EXPECT_NE(rep.find("ID07"), nullptr);
    EXPECT_EQ(rep.find("ID02"), nullptr);

    opt.check_filter = {"ID99"};
    EXPECT_THROW(run_identities(catalog_get("sphere"), {4, 4}, opt), BadParameter);
    opt.check_filter.clear();
    opt.order = 2;
    EXPECT_THROW(run_identities(catalog_get("sphere"), {4, 4}, opt), BadParameter);
    opt.order = 5;
    EXPECT_THROW(run_identities(catalog_get("sphere"), {0, 4}, opt), BadParameter);
    opt.scalar_mask = 0;
    EXPECT_THROW(run_identities(catalog_get("sphere"), {4, 4}, opt), BadParameter);
}

TEST(Options, ImpossibleToleranceFailsHonestly) {
    IdentityOptions opt;
    opt.eps_id = 1e-30;
    IdentityReport rep = run_identities(catalog_get("torus"), {4, 4}, opt);
    EXPECT_FALSE(rep.all_pass());
    int failed = 0;
    for (const auto& c : rep.checks)
        if (c.verdict == Verdict::FAIL) {
            ++failed;
            EXPECT_GT(c.max_residual, 0.0);
            EXPECT_GE(c.argmax.u, catalog_get("torus").domain.u.lo);
            EXPECT_LE(c.argmax.u, catalog_get("torus").domain.u.hi);
        }
    EXPECT_GT(failed, 10);
}

TEST(Options, ScalarMaskNarrowsTheTestFunctions) {
    // with only the coordinate scalars the gradient checks still run and pass
    IdentityOptions opt;
    opt.scalar_mask = 0x3; // u and v only
    IdentityReport rep = run_identities(catalog_get("sphere"), {5, 5}, opt);
    EXPECT_TRUE(rep.all_pass());
    for (const auto& c : rep.checks) EXPECT_NE(c.verdict, Verdict::FAIL) << c.id;
}

TEST(Report, MetadataRoundTrip) {
    IdentityOptions opt;
    opt.order = 6;
    opt.eps_id = 2e-8;
    IdentityReport rep = run_identities(catalog_get("torus"), {3, 7}, opt);
    EXPECT_EQ(rep.surface, "torus:R=2,r=0.5");
    EXPECT_EQ(rep.grid.nu, 3);
    EXPECT_EQ(rep.grid.nv, 7);
    EXPECT_EQ(rep.order, 6);
    EXPECT_DOUBLE_EQ(rep.eps_id, 2e-8);
    for (const auto& c : rep.checks)
        if (c.verdict != Verdict::SKIP) EXPECT_EQ(c.evaluated, 21) << c.id;
}
