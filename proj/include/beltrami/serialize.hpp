#pragma once

// Machine-readable report builders.  JSON uses nlohmann's ordered_json so key
// order is insertion order, and doubles serialize by shortest round-trip;
// identical inputs therefore produce byte-identical documents.  CSV rows quote
// per RFC 4180 and print numbers with %.17g.

#include <cstdio>
#include <string>
#include <vector>

#include "json.hpp"

#include "chentype.hpp"
#include "common.hpp"
#include "crosscheck.hpp"
#include "errors.hpp"
#include "identities.hpp"
#include "jet.hpp"
#include "surface.hpp"

namespace beltrami {

using Json = nlohmann::ordered_json;

namespace detail {

inline std::string g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string csv_escape(const std::string& s) {
    bool needs = false;
    for (char c : s)
        if (c == ',' || c == '"' || c == '\n' || c == '\r') {
            needs = true;
            break;
        }
    if (!needs) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

inline Json vec3_json(const Vec3& v) { return Json::array({v[0], v[1], v[2]}); }

} // namespace detail

inline Json to_json(const ExpectedMeta& m) {
    Json e = Json::object();
    if (m.is_minimal) e["is_minimal"] = *m.is_minimal;
    if (m.sphere_radius) e["sphere_radius"] = *m.sphere_radius;
    if (m.sphere_center) e["sphere_center"] = detail::vec3_json(*m.sphere_center);
    if (m.h_over_k) e["h_over_k"] = *m.h_over_k;
    Json types = Json::array();
    for (const auto& t : m.types) {
        Json tj = Json::object();
        tj["form"] = to_string(t.form);
        tj["field"] = to_string(t.field);
        tj["kind"] = t.kind == ExpectedKind::typed ? "typed" : "not_finite_type";
        if (t.kind == ExpectedKind::typed) {
            tj["degree"] = t.degree;
            tj["eigenvalues"] = t.eigenvalues;
            tj["null_type"] = t.null_type;
        }
        types.push_back(std::move(tj));
    }
    e["types"] = std::move(types);
    return e;
}

inline Json catalog_json() {
    Json doc = Json::object();
    doc["schema_version"] = 1;
    Json surfaces = Json::array();
    for (const auto& entry : catalog_entries()) {
        Json ej = Json::object();
        ej["name"] = entry.name;
        ej["description"] = entry.description;
        Json params = Json::array();
        for (const auto& p : entry.params) {
            Json pj = Json::object();
            pj["name"] = p.name;
            pj["default"] = p.default_value;
            pj["constraint"] = p.constraint;
            params.push_back(std::move(pj));
        }
        ej["params"] = std::move(params);
        ej["variants"] = entry.variants;
        ej["domain"] = Json::object({{"u", Json::array({entry.domain.u.lo, entry.domain.u.hi})},
                                     {"v", Json::array({entry.domain.v.lo, entry.domain.v.hi})}});
        ej["k_class"] = to_string(entry.k_class);
        if (entry.variants.empty()) {
            ej["expected"] = to_json(catalog_get(entry.name).expected);
        } else {
            Json by_variant = Json::object();
            for (const auto& var : entry.variants)
                by_variant[var] = to_json(catalog_get(entry.name, {}, var).expected);
            ej["expected_by_variant"] = std::move(by_variant);
        }
        surfaces.push_back(std::move(ej));
    }
    doc["surfaces"] = std::move(surfaces);
    return doc;
}

inline Json to_json(const IdentityReport& rep) {
    Json doc = Json::object();
    doc["schema_version"] = 1;
    doc["surface"] = rep.surface;
    doc["grid"] = Json::array({rep.grid.nu, rep.grid.nv});
    doc["order"] = rep.order;
    doc["eps_id"] = rep.eps_id;
    Json checks = Json::array();
    for (const auto& c : rep.checks) {
        Json cj = Json::object();
        cj["id"] = c.id;
        if (c.evaluated > 0) {
            cj["max_residual"] = c.max_residual;
            cj["argmax"] = Json::array({c.argmax.u, c.argmax.v});
        } else {
            cj["max_residual"] = nullptr;
            cj["argmax"] = nullptr;
        }
        cj["verdict"] = to_string(c.verdict);
        cj["evaluated"] = c.evaluated;
        cj["skipped"] = c.skipped;
        if (!c.skip_reason.empty()) cj["skip_reason"] = c.skip_reason;
        cj["description"] = c.description;
        checks.push_back(std::move(cj));
    }
    doc["checks"] = std::move(checks);
    doc["all_pass"] = rep.all_pass();
    return doc;
}

inline std::string to_csv(const IdentityReport& rep) {
    std::string out = "id,max_residual,argmax_u,argmax_v,verdict\n";
    for (const auto& c : rep.checks) {
        out += detail::csv_escape(c.id);
        out += ',';
        if (c.evaluated > 0) {
            out += detail::g17(c.max_residual);
            out += ',';
            out += detail::g17(c.argmax.u);
            out += ',';
            out += detail::g17(c.argmax.v);
        } else {
            out += ",,";
        }
        out += ',';
        out += detail::csv_escape(to_string(c.verdict));
        out += '\n';
    }
    return out;
}

inline Json to_json(const TypeProbeResult& r) {
    Json doc = Json::object();
    doc["schema_version"] = 1;
    doc["surface"] = r.surface;
    doc["form"] = to_string(r.form);
    doc["field"] = to_string(r.field);
    doc["degree"] = r.degree;
    doc["poly"] = r.poly;
    Json eig = Json::array();
    for (const auto& lam : r.eigenvalues) eig.push_back(Json::array({lam.real(), lam.imag()}));
    doc["eigenvalues"] = std::move(eig);
    doc["center"] = r.center ? detail::vec3_json(*r.center) : Json(nullptr);
    doc["residual"] = r.residual;
    doc["null_type"] = r.null_type;
    doc["verdict"] = r.verdict_string();
    doc["k_max"] = r.k_max;
    doc["cond"] = r.cond;
    if (!r.reason.empty()) doc["reason"] = r.reason;
    Json scan = Json::array();
    for (const auto& s : r.scan)
        scan.push_back(Json::object(
            {{"degree", s.degree}, {"residual", s.residual}, {"cond", s.cond}}));
    doc["scan"] = std::move(scan);
    doc["samples"] = r.samples_used;
    doc["seed"] = r.seed;
    return doc;
}

inline std::string to_csv(const TypeProbeResult& r) {
    std::string out =
        "surface,form,field,verdict,degree,residual,cond,null_type,center_x,center_y,center_z,"
        "eigenvalues\n";
    out += detail::csv_escape(r.surface);
    out += ',';
    out += to_string(r.form);
    out += ',';
    out += to_string(r.field);
    out += ',';
    out += detail::csv_escape(r.verdict_string());
    out += ',';
    out += std::to_string(r.degree);
    out += ',';
    out += detail::g17(r.residual);
    out += ',';
    out += detail::g17(r.cond);
    out += ',';
    out += r.null_type ? "true" : "false";
    out += ',';
    if (r.center) {
        out += detail::g17((*r.center)[0]);
        out += ',';
        out += detail::g17((*r.center)[1]);
        out += ',';
        out += detail::g17((*r.center)[2]);
    } else {
        out += ",,";
    }
    out += ',';
    std::string eigs;
    for (std::size_t i = 0; i < r.eigenvalues.size(); ++i) {
        if (i) eigs += ';';
        eigs += detail::g17(r.eigenvalues[i].real()) + "+" +
                detail::g17(r.eigenvalues[i].imag()) + "i";
    }
    out += detail::csv_escape(eigs);
    out += '\n';
    return out;
}

inline Json to_json(const CrossReport& rep, bool include_entries = false) {
    Json doc = Json::object();
    doc["schema_version"] = 1;
    doc["surface"] = rep.surface;
    doc["points"] = rep.points;
    doc["seed"] = rep.seed;
    doc["tolerance"] = rep.tolerance;
    doc["max_rel_error"] = rep.max_rel_error;
    doc["worst_quantity"] = rep.worst_quantity;
    doc["worst_point"] = Json::array({rep.worst_point.u, rep.worst_point.v});
    doc["pass"] = rep.pass;
    if (include_entries) {
        Json entries = Json::array();
        for (const auto& e : rep.entries)
            entries.push_back(Json::object({{"point", Json::array({e.point.u, e.point.v})},
                                            {"quantity", e.quantity},
                                            {"jet", e.jet_value},
                                            {"fd", e.fd_value},
                                            {"rel_error", e.rel_error}}));
        doc["entries"] = std::move(entries);
    }
    return doc;
}

inline std::string to_csv(const CrossReport& rep) {
    std::string out = "quantity,u,v,jet_value,fd_value,rel_error\n";
    for (const auto& e : rep.entries) {
        out += detail::csv_escape(e.quantity);
        out += ',';
        out += detail::g17(e.point.u);
        out += ',';
        out += detail::g17(e.point.v);
        out += ',';
        out += detail::g17(e.jet_value);
        out += ',';
        out += detail::g17(e.fd_value);
        out += ',';
        out += detail::g17(e.rel_error);
        out += '\n';
    }
    return out;
}

// debug dump of one jet: base point, order, and coefficients in the graded
// storage order (degree ascending, u-power descending within a degree)
inline Json jet_debug_json(const Jet2& f) {
    Json doc = Json::object();
    doc["order"] = f.order();
    doc["base"] = Json::array({f.base_u(), f.base_v()});
    doc["ordering"] = "graded-lex: (a+b) ascending, a descending; entry = d^(a+b)f/(du^a dv^b)/(a!b!)";
    Json coeffs = Json::array();
    for (int d = 0; d <= f.order(); ++d)
        for (int a = d; a >= 0; --a) coeffs.push_back(f.coeff(a, d - a));
    doc["coeffs"] = std::move(coeffs);
    return doc;
}

inline Json error_json(const Error& e) {
    return Json::object({{"error", e.kind()}, {"message", e.what()}});
}

} // namespace beltrami
