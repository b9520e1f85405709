// beltrami CLI: catalog inspection, pointwise geometry dumps, identity residual
// suites, finite-type probes, and jets-vs-oracle cross-validation.
//
// Exit codes: 0 success/pass, 2 check or probe failure (or a computational
// error), 3 configuration error, 4 indeterminate probe.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "beltrami/chentype.hpp"
#include "beltrami/common.hpp"
#include "beltrami/crosscheck.hpp"
#include "beltrami/errors.hpp"
#include "beltrami/geometry.hpp"
#include "beltrami/identities.hpp"
#include "beltrami/serialize.hpp"
#include "beltrami/surface.hpp"

namespace {

using namespace beltrami;

constexpr int kExitPass = 0;
constexpr int kExitFail = 2;
constexpr int kExitConfig = 3;
constexpr int kExitIndeterminate = 4;

void emit_error(const Error& e) { std::cerr << error_json(e).dump() << "\n"; }

void emit_config_error(const std::string& msg) {
    std::cerr << Json::object({{"error", "BadParameter"}, {"message", msg}}).dump() << "\n";
}

std::vector<std::string> split(const std::string& s, char delim) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == delim) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

double parse_double(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw BadParameter(what + ": cannot parse '" + s + "' as a number");
    }
}

bool is_monge_variant(const std::string& tok) {
    return tok == "zero" || tok == "paraboloid" || tok == "saddle" || tok == "bump";
}

// selector := ["parallel:"] name [":" arg {"," arg}]; arg := key=val | variant
SurfaceSpec parse_selector(const std::string& sel) {
    if (sel.empty()) throw BadParameter("selector: empty surface selector");
    std::string s = sel;
    const std::string prefix = "parallel:";
    bool want_parallel = false;
    if (s.rfind(prefix, 0) == 0) {
        want_parallel = true;
        s = s.substr(prefix.size());
        if (s.rfind(prefix, 0) == 0)
            throw BadParameter("selector: nested 'parallel:' composition is not supported");
    }
    std::string name = s, args;
    if (auto pos = s.find(':'); pos != std::string::npos) {
        name = s.substr(0, pos);
        args = s.substr(pos + 1);
    }
    if (name.empty()) throw BadParameter("selector: missing surface name in '" + sel + "'");

    std::map<std::string, double> params;
    std::string variant;
    std::optional<double> rho;
    if (!args.empty()) {
        for (const auto& tok : split(args, ',')) {
            if (tok.empty()) throw BadParameter("selector: empty argument in '" + sel + "'");
            if (auto eq = tok.find('='); eq != std::string::npos) {
                const std::string key = tok.substr(0, eq);
                const double val = parse_double(tok.substr(eq + 1), "selector " + key);
                if (key == "rho") {
                    rho = val;
                } else {
                    params[key] = val;
                }
            } else {
                if (!variant.empty())
                    throw BadParameter("selector: two variant tokens ('" + variant + "', '" +
                                       tok + "')");
                variant = tok;
            }
        }
    }
    // convenience: a bare monge variant name selects monge with that variant
    if (variant.empty() && is_monge_variant(name)) {
        variant = name;
        name = "monge";
    }
    SurfaceSpec base = catalog_get(name, params, variant);
    if (want_parallel) {
        if (!rho) throw BadParameter("selector: parallel: needs an offset, e.g. rho=0.5");
        return make_parallel(base, *rho);
    }
    if (rho) throw BadParameter("selector: rho is only meaningful with the parallel: prefix");
    return base;
}

GridSpec parse_grid(const std::string& s) {
    const auto parts = split(s, 'x');
    if (parts.size() != 2)
        throw BadParameter("grid: expected NxM, got '" + s + "'");
    GridSpec g;
    try {
        g.nu = std::stoi(parts[0]);
        g.nv = std::stoi(parts[1]);
    } catch (const std::exception&) {
        throw BadParameter("grid: expected NxM with integer N, M, got '" + s + "'");
    }
    if (g.nu < 2 || g.nv < 2) throw BadParameter("grid: must be at least 2x2");
    return g;
}

Point2 parse_point(const std::string& s) {
    const auto parts = split(s, ',');
    if (parts.size() != 2) throw BadParameter("point: expected u,v, got '" + s + "'");
    return {parse_double(parts[0], "point u"), parse_double(parts[1], "point v")};
}

void apply_domain_override(SurfaceSpec& spec, const std::string& s) {
    const auto parts = split(s, ',');
    if (parts.size() != 4)
        throw BadParameter("domain: expected ulo,uhi,vlo,vhi, got '" + s + "'");
    DomainBox box{{parse_double(parts[0], "domain ulo"), parse_double(parts[1], "domain uhi")},
                  {parse_double(parts[2], "domain vlo"), parse_double(parts[3], "domain vhi")}};
    if (!(box.u.lo < box.u.hi) || !(box.v.lo < box.v.hi))
        throw BadParameter("domain: intervals must be nonempty");
    if (box.u.lo < spec.domain.u.lo || box.u.hi > spec.domain.u.hi ||
        box.v.lo < spec.domain.v.lo || box.v.hi > spec.domain.v.hi)
        throw BadParameter("domain: override must sit inside the declared domain");
    spec.domain = box;
}

void write_out(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw BadParameter("cannot open output path '" + out_path + "'");
    f << text;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// ---- catalog ----------------------------------------------------------------

int run_catalog(const std::string& format, const std::string& out_path) {
    if (format == "json") {
        write_out(catalog_json().dump(2) + "\n", out_path);
        return kExitPass;
    }
    if (format != "text")
        throw BadParameter("catalog: supported formats are json and text");
    std::string t;
    for (const auto& e : catalog_entries()) {
        t += e.name;
        if (!e.variants.empty()) {
            t += " (variants:";
            for (const auto& v : e.variants) t += " " + v;
            t += ")";
        }
        t += "\n  " + e.description + "\n";
        t += "  domain u in (" + fmt(e.domain.u.lo) + ", " + fmt(e.domain.u.hi) + "), v in (" +
             fmt(e.domain.v.lo) + ", " + fmt(e.domain.v.hi) + ")\n";
        for (const auto& p : e.params)
            t += "  param " + p.name + " = " + fmt(p.default_value) + "  [" + p.constraint + "]\n";
        t += "  K sign over domain: " + std::string(to_string(e.k_class)) + "\n";
        auto dump_expected = [&](const ExpectedMeta& m, const std::string& indent) {
            for (const auto& ty : m.types) {
                t += indent + "expected " + std::string(to_string(ty.form)) + "/" +
                     to_string(ty.field) + ": ";
                if (ty.kind == ExpectedKind::typed) {
                    t += "type " + std::to_string(ty.degree) + ", eigenvalues {";
                    for (std::size_t i = 0; i < ty.eigenvalues.size(); ++i)
                        t += (i ? ", " : "") + fmt(ty.eigenvalues[i]);
                    t += "}";
                    if (ty.null_type) t += " (null)";
                } else {
                    t += "no finite type";
                }
                t += "\n";
            }
        };
        if (e.variants.empty()) {
            dump_expected(catalog_get(e.name).expected, "  ");
        } else {
            for (const auto& v : e.variants) {
                t += "  variant " + v + ":\n";
                dump_expected(catalog_get(e.name, {}, v).expected, "    ");
            }
        }
        t += "\n";
    }
    write_out(t, out_path);
    return kExitPass;
}

// ---- forms --------------------------------------------------------------------

int run_forms(const std::string& selector, const std::string& point_str,
              const std::string& format, const std::string& out_path, double eps_K) {
    SurfaceSpec spec = parse_selector(selector);
    const Point2 p = parse_point(point_str);
    if (!spec.domain.contains(p.u, p.v))
        throw BadParameter("forms: point (" + fmt(p.u) + ", " + fmt(p.v) +
                           ") lies outside the declared domain");

    const FrameData fr = frame(spec, p, 3);
    const double K = fr.K.value();
    const bool ok_II = K > eps_K;
    const bool ok_III = std::abs(K) > eps_K;

    auto form_json = [](const SymForm2& f) {
        return Json::object({{"a11", f.value(0, 0)},
                             {"a12", f.value(0, 1)},
                             {"a22", f.value(1, 1)},
                             {"det", f.det.value()}});
    };
    auto trace_json = [](const ChristoffelFamily& C) {
        double t0 = 0, t1 = 0;
        for (int j = 0; j < 2; ++j) {
            t0 += C.value(j, 0, j);
            t1 += C.value(j, 1, j);
        }
        return Json::array({t0, t1});
    };

    Json doc = Json::object();
    doc["schema_version"] = 1;
    doc["surface"] = spec.selector();
    doc["point"] = Json::array({p.u, p.v});
    doc["x"] = detail::vec3_json(values(fr.x));
    doc["n"] = detail::vec3_json(values(fr.n));
    doc["H"] = fr.H.value();
    doc["K"] = K;
    doc["I"] = form_json(fr.I);
    doc["I"]["christoffel_trace"] = trace_json(fr.gamma);
    if (ok_II) {
        doc["II"] = form_json(fr.II);
        if (fr.pi) doc["II"]["christoffel_trace"] = trace_json(*fr.pi);
    } else {
        doc["II"] = Json::object(
            {{"error", K < -eps_K ? "NonEllipticPoint" : "ParabolicPoint"},
             {"message", "second form is not a metric here (K = " + fmt(K) + ")"}});
    }
    if (ok_III) {
        doc["III"] = form_json(fr.III);
        if (fr.alpha) doc["III"]["christoffel_trace"] = trace_json(*fr.alpha);
    } else {
        doc["III"] = Json::object(
            {{"error", "ParabolicPoint"},
             {"message", "third form is not a metric here (K = " + fmt(K) + ")"}});
    }

    if (format == "json") {
        write_out(doc.dump(2) + "\n", out_path);
        return kExitPass;
    }
    if (format != "text") throw BadParameter("forms: supported formats are json and text");

    std::string t;
    t += "surface  " + spec.selector() + "\n";
    t += "point    (" + fmt(p.u) + ", " + fmt(p.v) + ")\n";
    const Vec3 xv = values(fr.x), nv = values(fr.n);
    t += "x        (" + fmt(xv[0]) + ", " + fmt(xv[1]) + ", " + fmt(xv[2]) + ")\n";
    t += "n        (" + fmt(nv[0]) + ", " + fmt(nv[1]) + ", " + fmt(nv[2]) + ")\n";
    t += "H        " + fmt(fr.H.value()) + "\n";
    t += "K        " + fmt(K) + "\n";
    auto form_text = [&](const char* label, const SymForm2& f) {
        t += std::string(label) + "  [" + fmt(f.value(0, 0)) + ", " + fmt(f.value(0, 1)) + ", " +
             fmt(f.value(1, 1)) + "], det " + fmt(f.det.value()) + "\n";
    };
    form_text("I  ", fr.I);
    if (ok_II)
        form_text("II ", fr.II);
    else
        t += "II   unavailable: " + std::string(K < -eps_K ? "NonEllipticPoint" : "ParabolicPoint") +
             "\n";
    if (ok_III)
        form_text("III", fr.III);
    else
        t += "III  unavailable: ParabolicPoint\n";
    write_out(t, out_path);
    return kExitPass;
}

// ---- identities ----------------------------------------------------------------

int run_identities_cmd(const std::string& selector, const std::string& grid_str,
                       const std::string& domain_str, const IdentityOptions& opt,
                       const std::string& checks_str, const std::string& format,
                       const std::string& out_path) {
    SurfaceSpec spec = parse_selector(selector);
    if (!domain_str.empty()) apply_domain_override(spec, domain_str);
    const GridSpec grid = parse_grid(grid_str);

    IdentityOptions o = opt;
    if (!checks_str.empty())
        for (const auto& tok : split(checks_str, ','))
            if (!tok.empty()) o.check_filter.push_back(tok);

    const IdentityReport rep = run_identities(spec, grid, o);

    if (format == "json") {
        write_out(to_json(rep).dump(2) + "\n", out_path);
    } else if (format == "csv") {
        write_out(to_csv(rep), out_path);
    } else if (format == "text") {
        std::string t = "surface " + rep.surface + ", grid " + std::to_string(grid.nu) + "x" +
                        std::to_string(grid.nv) + ", order " + std::to_string(rep.order) +
                        ", eps " + fmt(rep.eps_id) + "\n";
        for (const auto& c : rep.checks) {
            t += c.id + "  " + to_string(c.verdict);
            if (c.evaluated > 0)
                t += "  max " + fmt(c.max_residual) + " at (" + fmt(c.argmax.u) + ", " +
                     fmt(c.argmax.v) + ")  [" + std::to_string(c.evaluated) + " samples]";
            else
                t += "  (" + c.skip_reason + ")";
            t += "\n";
        }
        t += rep.all_pass() ? "ALL PASS\n" : "FAILURES PRESENT\n";
        write_out(t, out_path);
    } else {
        throw BadParameter("identities: supported formats are json, csv, text");
    }
    return rep.all_pass() ? kExitPass : kExitFail;
}

// ---- probe ---------------------------------------------------------------------

int run_probe(const std::string& selector, const std::string& domain_str, FormKind form,
              FieldKind field, const ProbeOptions& opt, const std::string& format,
              const std::string& out_path) {
    SurfaceSpec spec = parse_selector(selector);
    if (!domain_str.empty()) apply_domain_override(spec, domain_str);

    const TypeProbeResult res = probe(spec, form, field, opt);
    const ExpectedComparison cmp = compare_expected(spec, res);

    Json doc = to_json(res);
    doc["expected_available"] = cmp.has_expected;
    doc["matches_expected"] = cmp.has_expected ? Json(cmp.matches) : Json(nullptr);
    doc["comparison"] = cmp.detail;

    if (format == "json") {
        write_out(doc.dump(2) + "\n", out_path);
    } else if (format == "csv") {
        write_out(to_csv(res), out_path);
    } else if (format == "text") {
        std::string t = "surface " + res.surface + ", form " + to_string(res.form) + ", field " +
                        std::string(to_string(res.field)) + "\n";
        t += "verdict " + res.verdict_string() + "\n";
        if (res.verdict == ProbeVerdict::typed) {
            t += "eigenvalues {";
            for (std::size_t i = 0; i < res.eigenvalues.size(); ++i) {
                if (i) t += ", ";
                t += fmt(res.eigenvalues[i].real());
                if (std::abs(res.eigenvalues[i].imag()) > 0) {
                    t += "+" + fmt(res.eigenvalues[i].imag()) + "i";
                }
            }
            t += "}";
            if (res.null_type) t += "  (null type)";
            t += "\n";
            if (res.center) {
                t += "center (" + fmt((*res.center)[0]) + ", " + fmt((*res.center)[1]) + ", " +
                     fmt((*res.center)[2]) + ")\n";
            }
        }
        if (!res.reason.empty()) t += "reason " + res.reason + "\n";
        for (const auto& s : res.scan)
            t += "degree " + std::to_string(s.degree) + ": residual " + fmt(s.residual) +
                 ", cond " + fmt(s.cond) + "\n";
        t += "expectation: " + cmp.detail + "\n";
        write_out(t, out_path);
    } else {
        throw BadParameter("probe: supported formats are json, csv, text");
    }

    if (res.verdict == ProbeVerdict::indeterminate) return kExitIndeterminate;
    if (cmp.has_expected && !cmp.matches) return kExitFail;
    return kExitPass;
}

// ---- verify --cross --------------------------------------------------------------

int run_verify(const std::string& selector, const std::string& domain_str, int points,
               std::uint64_t seed, double tolerance, bool include_entries,
               const std::string& format, const std::string& out_path) {
    SurfaceSpec spec = parse_selector(selector);
    if (!domain_str.empty()) apply_domain_override(spec, domain_str);
    const CrossReport rep = cross_check(spec, points, seed, tolerance);

    if (format == "json") {
        write_out(to_json(rep, include_entries).dump(2) + "\n", out_path);
    } else if (format == "csv") {
        write_out(to_csv(rep), out_path);
    } else if (format == "text") {
        std::string t = "surface " + rep.surface + ", " + std::to_string(rep.points) +
                        " points, tolerance " + fmt(rep.tolerance) + "\n";
        t += "max rel error " + fmt(rep.max_rel_error) + " (" + rep.worst_quantity + " at (" +
             fmt(rep.worst_point.u) + ", " + fmt(rep.worst_point.v) + "))\n";
        t += rep.pass ? "PASS\n" : "FAIL\n";
        write_out(t, out_path);
    } else {
        throw BadParameter("verify: supported formats are json, csv, text");
    }
    return rep.pass ? kExitPass : kExitFail;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fundamental forms, Beltrami operators, identity residual suites, and "
                 "finite-type probes for parametric surfaces"};
    app.require_subcommand(1);

    std::string format = "text", out_path, selector, domain_str;

    auto add_common = [&](CLI::App* sc, bool with_surface) {
        sc->add_option("--format", format, "output format: json, csv, or text")
            ->default_val("text");
        sc->add_option("--out", out_path, "write the report to this path instead of stdout");
        if (with_surface) {
            sc->add_option("--surface", selector,
                           "surface selector, e.g. sphere:r=2, monge:saddle, "
                           "parallel:catenoid:rho=0.5")
                ->required();
            sc->add_option("--domain", domain_str,
                           "restrict to a sub-box: ulo,uhi,vlo,vhi (inside the declared domain)");
        }
    };

    CLI::App* sc_catalog = app.add_subcommand("catalog", "list surfaces and expected metadata");
    add_common(sc_catalog, false);

    CLI::App* sc_forms = app.add_subcommand("forms", "dump forms/curvatures at one point");
    add_common(sc_forms, true);
    std::string point_str;
    double forms_eps_K = kDefaultEpsK;
    sc_forms->add_option("--point", point_str, "parameter point u,v")->required();
    sc_forms->add_option("--eps-k", forms_eps_K, "|K| threshold for II/III admissibility");

    CLI::App* sc_id = app.add_subcommand("identities", "run the residual suite over a grid");
    add_common(sc_id, true);
    std::string grid_str = "20x20", checks_str;
    IdentityOptions id_opt;
    sc_id->add_option("--grid", grid_str, "sample grid NxM")->default_val("20x20");
    sc_id->add_option("--order", id_opt.order, "jet order (>= 3)")->default_val(5);
    sc_id->add_option("--eps-id", id_opt.eps_id, "residual pass threshold");
    sc_id->add_option("--eps-k", id_opt.eps_K, "|K| threshold for II/III admissibility");
    sc_id->add_option("--checks", checks_str, "comma-separated check ids (default: all)");

    CLI::App* sc_probe = app.add_subcommand("probe", "detect finite operator type");
    add_common(sc_probe, true);
    std::string form_str = "III", field_str = "position";
    ProbeOptions pr_opt;
    sc_probe->add_option("--form", form_str, "operator metric: II or III")->default_val("III");
    sc_probe->add_option("--field", field_str, "probed field: position or normal")
        ->default_val("position");
    sc_probe->add_option("--kmax", pr_opt.k_max, "largest degree to scan")->default_val(3);
    sc_probe->add_option("--samples", pr_opt.samples, "admissible sample count")->default_val(24);
    sc_probe->add_option("--seed", pr_opt.seed, "rng seed for sampling");
    sc_probe->add_option("--eps-type", pr_opt.eps_type, "fit acceptance threshold");
    sc_probe->add_option("--eps-root", pr_opt.eps_root, "root separation / nullity threshold");
    sc_probe->add_option("--cond-max", pr_opt.cond_max, "design-matrix condition limit");
    sc_probe->add_option("--eps-k", pr_opt.eps_K, "|K| threshold for II/III admissibility");

    CLI::App* sc_verify = app.add_subcommand("verify", "cross-validate jets against the oracle");
    add_common(sc_verify, true);
    bool cross = false;
    int verify_points = 20;
    std::uint64_t verify_seed = 7153;
    double verify_tol = 1e-5;
    bool include_entries = false;
    sc_verify->add_flag("--cross", cross, "run the jets-vs-finite-difference comparison");
    sc_verify->add_option("--points", verify_points, "sample point count")->default_val(20);
    sc_verify->add_option("--seed", verify_seed, "rng seed for sampling");
    sc_verify->add_option("--tol", verify_tol, "relative-error tolerance")->default_val(1e-5);
    sc_verify->add_flag("--include-entries", include_entries,
                        "include per-quantity entries in JSON output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help and friends
        std::cerr << e.what() << "\n";
        emit_config_error(e.what());
        return kExitConfig;
    }

    try {
        if (sc_catalog->parsed()) return run_catalog(format, out_path);
        if (sc_forms->parsed())
            return run_forms(selector, point_str, format, out_path, forms_eps_K);
        if (sc_id->parsed())
            return run_identities_cmd(selector, grid_str, domain_str, id_opt, checks_str, format,
                                      out_path);
        if (sc_probe->parsed()) {
            FormKind form;
            if (form_str == "II") form = FormKind::II;
            else if (form_str == "III") form = FormKind::III;
            else throw BadParameter("probe: --form must be II or III");
            FieldKind field;
            if (field_str == "position") field = FieldKind::position;
            else if (field_str == "normal") field = FieldKind::normal;
            else throw BadParameter("probe: --field must be position or normal");
            return run_probe(selector, domain_str, form, field, pr_opt, format, out_path);
        }
        if (sc_verify->parsed()) {
            if (!cross) throw BadParameter("verify: pass --cross (the only verification mode)");
            return run_verify(selector, domain_str, verify_points, verify_seed, verify_tol,
                              include_entries, format, out_path);
        }
        emit_config_error("no subcommand selected");
        return kExitConfig;
    } catch (const BadParameter& e) {
        emit_error(e);
        return kExitConfig;
    } catch (const UnknownSurface& e) {
        emit_error(e);
        return kExitConfig;
    } catch (const InadmissibleOffset& e) {
        emit_error(e);
        return kExitConfig;
    } catch (const DomainError& e) {
        emit_error(e);
        return kExitConfig;
    } catch (const Error& e) {
        emit_error(e);
        return kExitFail;
    }
}
