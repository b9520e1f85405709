#pragma once

// Parametric surface catalog and combinators.
//
// A SurfaceSpec bundles a jet evaluator (u, v, order) -> three coordinate jets
// with its parameter domain, canonical selector name, and optional expected
// analytic metadata (used by the type probe's cross-checks).  Combinators:
//   make_parallel  -- offset surface x* = x + rho n (shares the unit normal)
//   make_monge     -- graph patch x = (u, v, h(u, v))
//   translate      -- rigid translation (expected metadata adjusted)

#include <cstdio>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "common.hpp"
#include "errors.hpp"
#include "jet.hpp"
#include "vec.hpp"

namespace beltrami {

using Evaluator = std::function<Vec3Jet(double u, double v, int order)>;

// sign behavior of Gauss curvature over the whole declared domain
enum class KClass { positive, negative, mixed, zero, unknown };

inline const char* to_string(KClass k) {
    switch (k) {
        case KClass::positive: return "positive";
        case KClass::negative: return "negative";
        case KClass::mixed: return "mixed";
        case KClass::zero: return "zero";
        case KClass::unknown: return "unknown";
    }
    return "?";
}

enum class ExpectedKind { typed, not_finite_type };

// One analytically known probe outcome: for (form, field) the minimal-degree
// relation has degree `degree` with the given eigenvalue list, or no finite
// degree at all (not_finite_type).
struct ExpectedTypeEntry {
    FormKind form = FormKind::III;
    FieldKind field = FieldKind::position;
    ExpectedKind kind = ExpectedKind::typed;
    int degree = 1;
    std::vector<double> eigenvalues;
    bool null_type = false;
};

struct ExpectedMeta {
    std::optional<bool> is_minimal;
    std::optional<double> sphere_radius;
    std::optional<Vec3> sphere_center;
    std::optional<double> h_over_k; // constant H/K when the surface has one
    std::vector<ExpectedTypeEntry> types;

    const ExpectedTypeEntry* find(FormKind f, FieldKind fl) const {
        for (const auto& t : types)
            if (t.form == f && t.field == fl) return &t;
        return nullptr;
    }
};

struct SurfaceSpec {
    std::string name;                      // catalog name ("sphere", "monge", ...)
    std::string variant;                   // monge variant, empty otherwise
    std::map<std::string, double> params;  // ordered -> deterministic selectors
    DomainBox domain;
    Evaluator evaluate;
    ExpectedMeta expected;
    KClass k_class = KClass::unknown;

    // set by make_parallel: the base surface (same parametrization) and offset
    std::shared_ptr<const SurfaceSpec> parallel_base;
    double parallel_rho = 0.0;

    bool is_parallel() const { return parallel_base != nullptr; }

    // canonical selector string, parseable by the CLI grammar
    std::string selector() const {
        std::string s;
        if (is_parallel()) s += "parallel:";
        s += name;
        std::string args;
        if (!variant.empty()) args += variant;
        char buf[64];
        for (const auto& [k, val] : params) {
            if (!args.empty()) args += ",";
            std::snprintf(buf, sizeof buf, "%s=%.12g", k.c_str(), val);
            args += buf;
        }
        if (is_parallel()) {
            if (!args.empty()) args += ",";
            std::snprintf(buf, sizeof buf, "rho=%.12g", parallel_rho);
            args += buf;
        }
        if (!args.empty()) s += ":" + args;
        return s;
    }
};

namespace detail {

// H and K values from second-order jets; local to this module so surface
// combinators do not depend on the full frame machinery.
struct HK {
    double H, K;
};

inline HK mean_gauss_values(const Evaluator& ev, double u, double v) {
    Vec3Jet x = ev(u, v, 2);
    Vec3Jet xu = derive(x, Var::u), xv = derive(x, Var::v);
    Vec3Jet cr = cross(xu, xv);
    Jet2 nn = dot(cr, cr);
    if (nn.value() < kRegularityFloor * kRegularityFloor)
        throw IrregularPoint("surface is not regular at sampled point");
    Vec3Jet n = cr * recip(sqrt(nn));
    Vec3Jet n0 = truncated(n, 0);
    Vec3Jet xuu = derive(xu, Var::u), xuv = derive(xu, Var::v), xvv = derive(xv, Var::v);
    const double g11 = dot(xu, xu).value(), g12 = dot(xu, xv).value(), g22 = dot(xv, xv).value();
    const double b11 = dot(n0, truncated(xuu, 0)).value();
    const double b12 = dot(n0, truncated(xuv, 0)).value();
    const double b22 = dot(n0, truncated(xvv, 0)).value();
    const double dg = g11 * g22 - g12 * g12;
    const double db = b11 * b22 - b12 * b12;
    return {(g22 * b11 - 2.0 * g12 * b12 + g11 * b22) / (2.0 * dg), db / dg};
}

inline double param_or(const std::map<std::string, double>& params, const std::string& key,
                       double fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

inline void reject_unknown_params(const std::map<std::string, double>& params,
                                  std::initializer_list<const char*> known,
                                  const std::string& surface) {
    for (const auto& [k, v] : params) {
        bool ok = false;
        for (const char* name : known)
            if (k == name) ok = true;
        if (!ok) throw BadParameter(surface + ": unknown parameter '" + k + "'");
    }
}

} // namespace detail

// --- catalog -------------------------------------------------------------------

struct ParamSpec {
    std::string name;
    double default_value;
    std::string constraint;
};

struct CatalogEntryInfo {
    std::string name;
    std::string description;
    std::vector<ParamSpec> params;
    std::vector<std::string> variants;
    DomainBox domain;
    KClass k_class;
};

inline SurfaceSpec catalog_get(const std::string& name,
                               const std::map<std::string, double>& params = {},
                               const std::string& variant = "");

inline std::vector<CatalogEntryInfo> catalog_entries() {
    std::vector<CatalogEntryInfo> out;
    out.push_back({"sphere",
                   "round sphere, inward normal (n = -x/r), polar caps excluded",
                   {{"r", 1.0, "r > 0"}},
                   {},
                   {{0.0, 6.283185307179586}, {0.1, 3.041592653589793}},
                   KClass::positive});
    out.push_back({"catenoid",
                   "catenoid, scale a; minimal",
                   {{"a", 1.0, "a > 0"}},
                   {},
                   {{0.0, 6.283185307179586}, {-1.5, 1.5}},
                   KClass::negative});
    out.push_back({"helicoid",
                   "helicoid with pitch a; minimal",
                   {{"a", 1.0, "a > 0"}},
                   {},
                   {{0.0, 6.283185307179586}, {-1.2, 1.2}},
                   KClass::negative});
    out.push_back({"enneper",
                   "Enneper patch on an off-origin box (keeps |K| moderate)",
                   {},
                   {},
                   {{0.2, 0.9}, {0.2, 0.9}},
                   KClass::negative});
    out.push_back({"torus",
                   "torus band around the outer equator (tube angle first): K > 0",
                   {{"R", 2.0, "R > r"}, {"r", 0.5, "r > 0"}},
                   {},
                   {{-1.2, 1.2}, {0.0, 6.283185307179586}},
                   KClass::positive});
    out.push_back({"torus_inner",
                   "torus band around the inner equator: K < 0",
                   {{"R", 2.0, "R > r"}, {"r", 0.5, "r > 0"}},
                   {},
                   {{1.9415926535897932, 4.3415926535897932}, {0.0, 6.283185307179586}},
                   KClass::negative});
    out.push_back({"monge",
                   "graph patch x = (u, v, h(u, v)); pick h by variant",
                   {},
                   {"zero", "paraboloid", "saddle", "bump"},
                   {{-1.0, 1.0}, {-1.0, 1.0}},
                   KClass::mixed});
    return out;
}

inline SurfaceSpec make_monge(const std::string& variant_name,
                              std::function<Jet2(double, double, int)> h, DomainBox domain) {
    SurfaceSpec s;
    s.name = "monge";
    s.variant = variant_name;
    s.domain = domain;
    s.evaluate = [h = std::move(h)](double u, double v, int order) -> Vec3Jet {
        return {Jet2::variable_u(order, u, v), Jet2::variable_v(order, u, v), h(u, v, order)};
    };
    return s;
}

// Offset surface x* = x + rho n.  The unit normal consumes one derivative
// order, so the combinator requests order m+1 from the base.  Admissibility
// (1 - 2 rho H + rho^2 K != 0) is sampled on a coarse grid at construction.
inline SurfaceSpec make_parallel(const SurfaceSpec& base, double rho,
                                 double eps_par = kDefaultEpsPar) {
    // offsets share the unit normal, so an offset of an offset is one offset
    // at the summed distance; flattening keeps selectors canonical
    if (base.is_parallel()) return make_parallel(*base.parallel_base, base.parallel_rho + rho, eps_par);
    auto base_ptr = std::make_shared<const SurfaceSpec>(base);

    double kmin = 1e300, kmax = -1e300;
    const int n = 9;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double u = base.domain.u.lo + (i + 0.5) * base.domain.u.width() / n;
            const double v = base.domain.v.lo + (j + 0.5) * base.domain.v.width() / n;
            const auto hk = detail::mean_gauss_values(base.evaluate, u, v);
            const double adm = 1.0 - 2.0 * rho * hk.H + rho * rho * hk.K;
            if (std::abs(adm) <= eps_par)
                throw InadmissibleOffset("make_parallel: 1 - 2 rho H + rho^2 K = " +
                                         std::to_string(adm) + " at (u,v)=(" + std::to_string(u) +
                                         "," + std::to_string(v) + ") for rho = " +
                                         std::to_string(rho));
            const double kstar = hk.K / adm;
            kmin = std::min(kmin, kstar);
            kmax = std::max(kmax, kstar);
        }
    }

    SurfaceSpec s;
    s.name = base.name;
    s.variant = base.variant;
    s.params = base.params;
    s.domain = base.domain;
    s.parallel_base = base_ptr;
    s.parallel_rho = rho;
    if (kmin > 0)
        s.k_class = KClass::positive;
    else if (kmax < 0)
        s.k_class = KClass::negative;
    else
        s.k_class = KClass::mixed;

    s.evaluate = [base_ptr, rho](double u, double v, int order) -> Vec3Jet {
        Vec3Jet x = base_ptr->evaluate(u, v, order + 1);
        Vec3Jet xu = derive(x, Var::u), xv = derive(x, Var::v);
        Vec3Jet cr = cross(xu, xv);
        Jet2 nn = dot(cr, cr);
        if (nn.value() < kRegularityFloor * kRegularityFloor)
            throw IrregularPoint("parallel: base surface irregular at sampled point");
        Vec3Jet nrm = cr * recip(sqrt(nn));
        return truncated(x, order) + nrm * rho;
    };

    // expected metadata derivable from the base's
    s.expected.types.push_back(
        {FormKind::III, FieldKind::normal, ExpectedKind::typed, 1, {2.0}, false});
    if (base.expected.h_over_k) s.expected.h_over_k = *base.expected.h_over_k - rho;
    if (base.expected.sphere_radius) {
        const double rstar = *base.expected.sphere_radius - rho; // inward normal shrinks
        if (std::abs(rstar) > eps_par) {
            s.expected.sphere_radius = rstar;
            s.expected.sphere_center = base.expected.sphere_center;
            s.expected.is_minimal = false;
            s.expected.types.push_back({FormKind::II, FieldKind::position, ExpectedKind::typed, 1,
                                        {2.0 / rstar}, false});
            s.expected.types.push_back(
                {FormKind::II, FieldKind::normal, ExpectedKind::typed, 1, {2.0 / rstar}, false});
            s.expected.types.push_back(
                {FormKind::III, FieldKind::position, ExpectedKind::typed, 1, {2.0}, false});
        }
    } else if (base.expected.is_minimal && *base.expected.is_minimal) {
        s.expected.is_minimal = false;
        s.expected.types.push_back(
            {FormKind::III, FieldKind::position, ExpectedKind::typed, 2, {0.0, 2.0}, true});
    }
    return s;
}

// Rigid translation.  Expected metadata survives (sphere centers move).
inline SurfaceSpec translate(const SurfaceSpec& base, const Vec3& t) {
    SurfaceSpec s = base;
    if (base.parallel_base)
        s.parallel_base = std::make_shared<const SurfaceSpec>(translate(*base.parallel_base, t));
    auto inner = base.evaluate;
    s.evaluate = [inner, t](double u, double v, int order) -> Vec3Jet {
        Vec3Jet x = inner(u, v, order);
        for (int c = 0; c < 3; ++c) x[c] += t[c];
        return x;
    };
    if (s.expected.sphere_radius) {
        Vec3 c = s.expected.sphere_center.value_or(Vec3{0, 0, 0});
        s.expected.sphere_center = Vec3{c[0] + t[0], c[1] + t[1], c[2] + t[2]};
    }
    return s;
}

inline SurfaceSpec catalog_get(const std::string& name,
                               const std::map<std::string, double>& params,
                               const std::string& variant) {
    auto require_positive = [&](const char* pname, double val) {
        if (!(val > 0))
            throw BadParameter(name + ": parameter " + pname + " must be positive, got " +
                               std::to_string(val));
    };

    if (name != "monge" && !variant.empty())
        throw BadParameter(name + ": does not take a variant ('" + variant + "')");

    if (name == "sphere") {
        detail::reject_unknown_params(params, {"r"}, name);
        const double r = detail::param_or(params, "r", 1.0);
        require_positive("r", r);
        SurfaceSpec s;
        s.name = "sphere";
        s.params = {{"r", r}};
        s.domain = {{0.0, 6.283185307179586}, {0.1, 3.041592653589793}};
        s.k_class = KClass::positive;
        s.evaluate = [r](double u, double v, int order) -> Vec3Jet {
            Jet2 U = Jet2::variable_u(order, u, v), V = Jet2::variable_v(order, u, v);
            Jet2 sv = sin(V), cv = cos(V);
            return {sv * cos(U) * r, sv * sin(U) * r, cv * r};
        };
        s.expected.sphere_radius = r;
        s.expected.sphere_center = Vec3{0, 0, 0};
        s.expected.is_minimal = false;
        s.expected.h_over_k = r;
        s.expected.types = {
            {FormKind::II, FieldKind::position, ExpectedKind::typed, 1, {2.0 / r}, false},
            {FormKind::II, FieldKind::normal, ExpectedKind::typed, 1, {2.0 / r}, false},
            {FormKind::III, FieldKind::position, ExpectedKind::typed, 1, {2.0}, false},
            {FormKind::III, FieldKind::normal, ExpectedKind::typed, 1, {2.0}, false}};
        return s;
    }

    if (name == "catenoid") {
        detail::reject_unknown_params(params, {"a"}, name);
        const double a = detail::param_or(params, "a", 1.0);
        require_positive("a", a);
        SurfaceSpec s;
        s.name = "catenoid";
        s.params = {{"a", a}};
        s.domain = {{0.0, 6.283185307179586}, {-1.5, 1.5}};
        s.k_class = KClass::negative;
        s.evaluate = [a](double u, double v, int order) -> Vec3Jet {
            Jet2 U = Jet2::variable_u(order, u, v), V = Jet2::variable_v(order, u, v);
            Jet2 ch = cosh(V);
            return {ch * cos(U) * a, ch * sin(U) * a, V * a};
        };
        s.expected.is_minimal = true;
        s.expected.h_over_k = 0.0;
        s.expected.types = {
            {FormKind::III, FieldKind::position, ExpectedKind::typed, 1, {0.0}, true},
            {FormKind::III, FieldKind::normal, ExpectedKind::typed, 1, {2.0}, false}};
        return s;
    }

    if (name == "helicoid") {
        detail::reject_unknown_params(params, {"a"}, name);
        const double a = detail::param_or(params, "a", 1.0);
        require_positive("a", a);
        SurfaceSpec s;
        s.name = "helicoid";
        s.params = {{"a", a}};
        s.domain = {{0.0, 6.283185307179586}, {-1.2, 1.2}};
        s.k_class = KClass::negative;
        s.evaluate = [a](double u, double v, int order) -> Vec3Jet {
            Jet2 U = Jet2::variable_u(order, u, v), V = Jet2::variable_v(order, u, v);
            return {V * cos(U), V * sin(U), U * a};
        };
        s.expected.is_minimal = true;
        s.expected.h_over_k = 0.0;
        s.expected.types = {
            {FormKind::III, FieldKind::position, ExpectedKind::typed, 1, {0.0}, true},
            {FormKind::III, FieldKind::normal, ExpectedKind::typed, 1, {2.0}, false}};
        return s;
    }

    if (name == "enneper") {
        detail::reject_unknown_params(params, {}, name);
        SurfaceSpec s;
        s.name = "enneper";
        s.domain = {{0.2, 0.9}, {0.2, 0.9}};
        s.k_class = KClass::negative;
        s.evaluate = [](double u, double v, int order) -> Vec3Jet {
            Jet2 U = Jet2::variable_u(order, u, v), V = Jet2::variable_v(order, u, v);
            Jet2 U2 = U * U, V2 = V * V;
            return {U - U * U2 * (1.0 / 3.0) + U * V2, V - V * V2 * (1.0 / 3.0) + V * U2,
                    U2 - V2};
        };
        s.expected.is_minimal = true;
        s.expected.h_over_k = 0.0;
        s.expected.types = {
            {FormKind::III, FieldKind::position, ExpectedKind::typed, 1, {0.0}, true},
            {FormKind::III, FieldKind::normal, ExpectedKind::typed, 1, {2.0}, false}};
        return s;
    }

    if (name == "torus" || name == "torus_inner") {
        detail::reject_unknown_params(params, {"R", "r"}, name);
        const double R = detail::param_or(params, "R", 2.0);
        const double r = detail::param_or(params, "r", 0.5);
        require_positive("r", r);
        if (!(R > r))
            throw BadParameter(name + ": requires R > r, got R = " + std::to_string(R) +
                               ", r = " + std::to_string(r));
        SurfaceSpec s;
        s.name = name;
        s.params = {{"R", R}, {"r", r}};
        const double pi = 3.141592653589793;
        s.domain = (name == "torus") ? DomainBox{{-1.2, 1.2}, {0.0, 2 * pi}}
                                     : DomainBox{{pi - 1.2, pi + 1.2}, {0.0, 2 * pi}};
        s.k_class = (name == "torus") ? KClass::positive : KClass::negative;
        // tube angle first so that the unit normal points toward the tube's
        // center circle; on the outer band this gives H > 0 like the sphere.
        s.evaluate = [R, r](double u, double v, int order) -> Vec3Jet {
            Jet2 U = Jet2::variable_u(order, u, v), V = Jet2::variable_v(order, u, v);
            Jet2 A = cos(U) * r + R;
            return {A * cos(V), A * sin(V), sin(U) * r};
        };
        s.expected.is_minimal = false;
        s.expected.types = {
            {FormKind::III, FieldKind::position, ExpectedKind::not_finite_type, 0, {}, false},
            {FormKind::III, FieldKind::normal, ExpectedKind::typed, 1, {2.0}, false}};
        return s;
    }

    if (name == "monge") {
        detail::reject_unknown_params(params, {}, name);
        const DomainBox box{{-1.0, 1.0}, {-1.0, 1.0}};
        auto mk = [&](const char* vn, std::function<Jet2(double, double, int)> h,
                      KClass kc) -> SurfaceSpec {
            SurfaceSpec s = make_monge(vn, std::move(h), box);
            s.k_class = kc;
            return s;
        };
        if (variant == "zero")
            return mk("zero",
                      [](double u, double v, int order) { return Jet2::constant(order, u, v, 0.0); },
                      KClass::zero);
        if (variant == "paraboloid") {
            SurfaceSpec s = mk("paraboloid",
                               [](double u, double v, int order) {
                                   Jet2 U = Jet2::variable_u(order, u, v),
                                        V = Jet2::variable_v(order, u, v);
                                   return U * U + V * V;
                               },
                               KClass::positive);
            s.expected.types = {
                {FormKind::III, FieldKind::normal, ExpectedKind::typed, 1, {2.0}, false}};
            return s;
        }
        if (variant == "saddle") {
            SurfaceSpec s = mk("saddle",
                               [](double u, double v, int order) {
                                   Jet2 U = Jet2::variable_u(order, u, v),
                                        V = Jet2::variable_v(order, u, v);
                                   return U * U - V * V;
                               },
                               KClass::negative);
            s.expected.types = {
                {FormKind::III, FieldKind::normal, ExpectedKind::typed, 1, {2.0}, false}};
            return s;
        }
        if (variant == "bump")
            return mk("bump",
                      [](double u, double v, int order) {
                          Jet2 U = Jet2::variable_u(order, u, v),
                               V = Jet2::variable_v(order, u, v);
                          return exp(-(U * U) - V * V);
                      },
                      KClass::mixed);
        throw BadParameter("monge: unknown variant '" + variant +
                           "' (expected zero|paraboloid|saddle|bump)");
    }

    throw UnknownSurface("no catalog surface named '" + name +
                         "' (try: sphere, catenoid, helicoid, enneper, torus, torus_inner, monge)");
}

} // namespace beltrami
