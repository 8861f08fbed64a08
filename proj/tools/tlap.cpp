// tlap: command-line surface for the tangential-Laplacian toolkit.
// CSV or gallery maps in, JSON reports out. Exit status: 0 pass, 1 fail
// verdict, 2 usage or input error.

#include <cmath>
#include <cstdint>
#include <iostream>
#include <limits>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tlap/maps.hpp"
#include "tlap/operators.hpp"
#include "tlap/reduce.hpp"
#include "tlap/report.hpp"
#include "tlap/rigidity.hpp"
#include "tlap/separated.hpp"
#include "tlap/variational.hpp"

namespace {

using namespace tlap;

struct CommonOpts {
    std::string map_spec;
    std::vector<std::string> params;
    std::string box_spec;
    int n = 41;
    double rel_tol = -1.0;  // <0: policy default
    double abs_tol = -1.0;
    std::string out = "tlap_report.json";
    int threads = 1;
    std::uint64_t seed = 1;
};

std::pair<std::string, ParamMap> parse_map_spec(const std::string& spec,
                                                const std::vector<std::string>& extra) {
    ParamMap params;
    for (const std::string& kv : extra) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw InvalidInput("--param expects key=value, got '" + kv + "'");
        params[kv.substr(0, eq)] = kv.substr(eq + 1);
    }
    if (spec.rfind("csv:", 0) == 0) return {spec, params};
    if (spec.rfind("gallery:", 0) != 0)
        throw InvalidInput("--map must be gallery:<id>[:<inner>] or csv:<path>");
    std::string rest = spec.substr(8);
    const auto colon = rest.find(':');
    if (colon != std::string::npos) {
        params["inner"] = rest.substr(colon + 1);
        rest = rest.substr(0, colon);
        if (rest != "embed3")
            throw InvalidInput("--map gallery:<id>:<inner> is only valid for embed3");
    }
    return {rest, params};
}

struct BuiltMap {
    MapPtr source;
    bool from_csv = false;
    std::optional<GridMap> grid;  // kept for fd sweeps on csv maps
    std::string spec;
};

BuiltMap build_map(const CommonOpts& opts) {
    BuiltMap out;
    out.spec = opts.map_spec;
    auto [id, params] = parse_map_spec(opts.map_spec, opts.params);
    if (id.rfind("csv:", 0) == 0) {
        out.from_csv = true;
        out.grid = load_grid(id.substr(4));
        out.source = grid_source(*out.grid);
        if (!params.empty())
            throw InvalidInput("--param is only meaningful for gallery maps");
        return out;
    }
    out.source = gallery(id, params);
    return out;
}

BoxDomain parse_box(const std::string& spec, int n_per_axis) {
    BoxDomain box;
    std::stringstream ss(spec);
    std::string axis;
    while (std::getline(ss, axis, 'x')) {
        const auto comma = axis.find(',');
        if (comma == std::string::npos)
            throw InvalidInput("--box axis must be lo,hi (got '" + axis + "')");
        try {
            box.lower.push_back(std::stod(axis.substr(0, comma)));
            box.upper.push_back(std::stod(axis.substr(comma + 1)));
        } catch (const std::exception&) {
            throw InvalidInput("--box has a non-numeric bound in '" + axis + "'");
        }
        box.resolution.push_back(n_per_axis);
    }
    box.validate();
    return box;
}

double parse_p(const std::string& s) {
    if (s == "inf" || s == "Inf" || s == "INF")
        return std::numeric_limits<double>::infinity();
    try {
        return std::stod(s);
    } catch (const std::exception&) {
        throw InvalidInput("--p must be a number >= 2 or 'inf'");
    }
}

Json p_json(double p) {
    if (std::isinf(p)) return Json("inf");
    return Json(p);
}

RankPolicy resolve_policy(const CommonOpts& opts, bool fd_jets, double hmax) {
    RankPolicy policy = fd_jets ? RankPolicy::for_grid_spacing(hmax) : RankPolicy::analytic();
    if (opts.rel_tol >= 0.0) policy.rel_tol = opts.rel_tol;
    if (opts.abs_tol >= 0.0) policy.abs_tol = opts.abs_tol;
    return policy;
}

Json policy_json(const RankPolicy& p) {
    return Json{{"rel_tol", p.rel_tol}, {"abs_tol", p.abs_tol}};
}

Json vec_json(const Vec& v) {
    Json a = Json::array();
    for (double x : v) a.push_back(x);
    return a;
}

Json box_json(const BoxDomain& b) {
    Json r = Json::array();
    for (int x : b.resolution) r.push_back(x);
    return Json{{"lower", vec_json(b.lower)}, {"upper", vec_json(b.upper)}, {"resolution", r}};
}

Json report_skeleton(const std::string& command) {
    Json j;
    j["version"] = kToolVersion;
    j["command"] = command;
    return j;
}

int finish(Json& report, bool pass, const std::string& out_path, const std::string& summary) {
    report["verdict"] = pass ? "pass" : "fail";
    write_report(out_path, report);
    std::cout << summary << " verdict=" << (pass ? "pass" : "fail")
              << " report=" << out_path << "\n";
    return pass ? 0 : 1;
}

// ---------------------------------------------------------------------------

int run_gallery(bool list, const std::string& id, const std::string& out_path) {
    Json report = report_skeleton("gallery");
    report["config"] = Json{{"list", list}, {"id", id}};
    Json entries = Json::array();
    int count = 0;
    for (const GalleryEntry& e : gallery_catalogue()) {
        if (!id.empty() && e.id != id) continue;
        entries.push_back(Json{{"id", e.id}, {"summary", e.summary}, {"params", e.params_doc}});
        ++count;
    }
    if (!id.empty() && count == 0) throw InvalidInput("gallery: unknown entry '" + id + "'");
    report["results"] = Json{{"entries", entries}, {"count", count}};
    return finish(report, true, out_path,
                  "gallery: " + std::to_string(count) + " entries");
}

struct InteriorLattice {
    std::vector<std::vector<int>> indices;  // full-lattice indices, domain order
};

InteriorLattice interior_lattice(const BoxDomain& box) {
    InteriorLattice lat;
    std::vector<int> inner(box.resolution.size());
    for (std::size_t i = 0; i < inner.size(); ++i) {
        inner[i] = box.resolution[i] - 2;
        if (inner[i] < 1) throw InvalidInput("interior lattice is empty");
    }
    for_each_index(inner, [&](const std::vector<int>& idx) {
        std::vector<int> full(idx);
        for (std::size_t i = 0; i < full.size(); ++i) ++full[i];
        lat.indices.push_back(full);
    });
    return lat;
}

int run_residual(const CommonOpts& opts, const std::string& op, const std::string& p_str,
                 const std::string& jets, double tol) {
    const BuiltMap built = build_map(opts);
    const MapSource& src = *built.source;

    BoxDomain box;
    bool fd = jets == "fd" || built.from_csv;
    if (built.from_csv) {
        if (!opts.box_spec.empty())
            throw InvalidInput("csv maps use their own lattice; --box is not supported");
        box = built.grid->domain;
    } else {
        box = opts.box_spec.empty()
                  ? BoxDomain{src.domain().lower, src.domain().upper,
                              std::vector<int>(src.domain().lower.size(), opts.n)}
                  : parse_box(opts.box_spec, opts.n);
        box.validate();
    }
    double hmax = 0.0;
    for (int i = 0; i < box.dim(); ++i) hmax = std::max(hmax, box.spacing(i));
    const RankPolicy policy = resolve_policy(opts, fd, hmax);
    const double p = p_str.empty() ? 2.0 : parse_p(p_str);

    std::optional<GridMap> grid;
    if (built.from_csv)
        grid = *built.grid;
    else if (fd)
        grid = sample_grid(src, box);

    const InteriorLattice lat = interior_lattice(box);
    const std::size_t count = lat.indices.size();
    std::vector<double> raw(count), normalized(count);
    std::vector<Vec> points(count);

    auto op_eval = [&](const Jet2& jet) -> Vec {
        if (op == "tangential") return tangential_residual(jet, policy);
        if (op == "tension") return tension_field(jet, policy);
        if (op == "laplacian") return laplacian(jet);
        if (op == "inf") return inf_laplace_residual(jet, policy);
        if (op == "p")
            return std::isinf(p) ? inf_laplace_residual(jet, policy)
                                 : p_laplace_residual(jet, p);
        throw InvalidInput("--op must be tangential, tension, laplacian, p or inf");
    };

    std::exception_ptr first_error;
    std::mutex error_mutex;
    parallel_for(count, opts.threads, [&](std::size_t i) {
        try {
            const Jet2 jet = grid ? fd_jet(*grid, lat.indices[i])
                                  : src.eval_jet(box.point(lat.indices[i]));
            const Vec r = op_eval(jet);
            raw[i] = norm(r);
            normalized[i] = raw[i] / residual_scale(jet);
            points[i] = jet.point;
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
        }
    });
    if (first_error) std::rethrow_exception(first_error);

    const double max_raw = pairwise_max(raw);
    const double max_norm = pairwise_max(normalized);
    std::size_t arg = 0;
    for (std::size_t i = 0; i < count; ++i)
        if (normalized[i] == max_norm) {
            arg = i;
            break;
        }

    Json report = report_skeleton("residual");
    report["config"] = Json{{"map", built.spec},      {"op", op},
                            {"p", p_json(p)},          {"jets", fd ? "fd" : "analytic"},
                            {"box", box_json(box)},    {"tol", tol},
                            {"policy", policy_json(policy)}};
    Json pts = Json::array();
    for (std::size_t i = 0; i < count; ++i)
        pts.push_back(Json{{"x", vec_json(points[i])},
                           {"raw", raw[i]},
                           {"normalized", normalized[i]}});
    report["results"] = Json{{"points", pts},
                             {"count", static_cast<std::uint64_t>(count)},
                             {"max_raw", max_raw},
                             {"max_normalized", max_norm},
                             {"argmax", vec_json(points[arg])}};
    const bool pass = max_norm <= tol;
    std::ostringstream os;
    os << "residual: op=" << op << " max_normalized=" << max_norm << " tol=" << tol;
    return finish(report, pass, opts.out, os.str());
}

int run_flatness(const CommonOpts& opts, double tol) {
    const BuiltMap built = build_map(opts);
    const MapSource& src = *built.source;
    BoxDomain box;
    if (built.from_csv) {
        if (!opts.box_spec.empty())
            throw InvalidInput("csv maps use their own lattice; --box is not supported");
        box = built.grid->domain;
    } else {
        box = opts.box_spec.empty()
                  ? BoxDomain{src.domain().lower, src.domain().upper,
                              std::vector<int>(src.domain().lower.size(), opts.n)}
                  : parse_box(opts.box_spec, opts.n);
    }
    double hmax = 0.0;
    for (int i = 0; i < box.dim(); ++i) hmax = std::max(hmax, box.spacing(i));
    const RankPolicy policy = resolve_policy(opts, built.from_csv, hmax);

    const FlatnessReport rep = flatness_report(src, box, policy, tol);

    Json report = report_skeleton("flatness");
    report["config"] = Json{{"map", built.spec},
                            {"box", box_json(box)},
                            {"tol", tol},
                            {"policy", policy_json(policy)}};
    Json comps = Json::array();
    for (const ComponentVerdict& v : rep.components) {
        Json basis = Json::array();
        for (const Vec& b : v.fit.basis) basis.push_back(vec_json(b));
        comps.push_back(Json{{"label", v.component.label},
                             {"rank", v.component.rank},
                             {"cells", static_cast<std::uint64_t>(v.component.cells.size())},
                             {"counted", v.counted},
                             {"codim0", v.codim0},
                             {"dim", v.fit.dim},
                             {"base", vec_json(v.fit.base)},
                             {"basis", basis},
                             {"rms", v.fit.rms},
                             {"max_dev", v.fit.max_dev},
                             {"diameter", v.diameter},
                             {"flat", v.flat}});
    }
    report["results"] = Json{{"components", comps}, {"all_flat", rep.all_flat}};
    std::ostringstream os;
    os << "flatness: components=" << rep.components.size()
       << " all_flat=" << (rep.all_flat ? "yes" : "no");
    return finish(report, rep.all_flat, opts.out, os.str());
}

int run_variational(const CommonOpts& opts, const std::string& p_str, int trials,
                    const std::string& eps_spec, const std::string& sub_spec, int sub_n) {
    const BuiltMap built = build_map(opts);
    const MapSource& src = *built.source;
    const double p = parse_p(p_str);

    BoxDomain sub_box;
    if (sub_spec.empty()) {
        // central half of the source domain
        const BoxDomain& d = src.domain();
        for (int i = 0; i < d.dim(); ++i) {
            const double len = d.upper[i] - d.lower[i];
            sub_box.lower.push_back(d.lower[i] + 0.25 * len);
            sub_box.upper.push_back(d.upper[i] - 0.25 * len);
            sub_box.resolution.push_back(sub_n);
        }
    } else {
        sub_box = parse_box(sub_spec, sub_n);
    }
    sub_box.validate();

    std::vector<double> eps;
    {
        std::stringstream ss(eps_spec);
        std::string tok;
        while (std::getline(ss, tok, ',')) eps.push_back(std::stod(tok));
    }
    const RankPolicy policy = resolve_policy(opts, built.from_csv, 0.0);
    const Subdomain sub = Subdomain::make(sub_box, src);
    const VariationalReport rep =
        minimality_check(src, sub, p, trials, eps, policy, opts.seed);

    Json report = report_skeleton("variational");
    report["config"] = Json{{"map", built.spec},
                            {"p", p_json(p)},
                            {"trials", trials},
                            {"eps", vec_json(eps)},
                            {"sub", box_json(sub_box)},
                            {"seed", opts.seed},
                            {"policy", policy_json(policy)}};
    Json trials_json = Json::array();
    for (const TrialResult& t : rep.trials) {
        Json energies = Json::array();
        for (const auto& [e, v] : t.energies) energies.push_back(Json{{"eps", e}, {"energy", v}});
        trials_json.push_back(Json{{"seed", t.seed},
                                   {"w", vec_json(t.w)},
                                   {"bump", t.bump},
                                   {"boundary_zero", t.boundary_zero},
                                   {"energies", energies},
                                   {"min_margin", t.min_margin},
                                   {"stationarity", t.stationarity}});
    }
    report["results"] = Json{{"p", p_json(rep.p)},
                             {"verdict", rep.verdict},
                             {"base_energy", rep.base_energy},
                             {"gate_residual", rep.gate_residual},
                             {"fd_slack_h2", rep.fd_slack_h2},
                             {"stationarity_derivative", rep.stationarity_derivative},
                             {"trials", trials_json}};
    std::ostringstream os;
    os << "variational: p=" << p_str << " verdict=" << rep.verdict
       << " base=" << rep.base_energy;
    return finish(report, rep.verdict == "minimal", opts.out, os.str());
}

std::pair<double, double> parse_point2(const std::string& s, const char* what) {
    const auto comma = s.find(',');
    if (comma == std::string::npos)
        throw InvalidInput(std::string(what) + " expects x,y");
    try {
        return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
    } catch (const std::exception&) {
        throw InvalidInput(std::string(what) + " has a non-numeric coordinate");
    }
}

Json factors_json(const IntegralFactors& fa) {
    return Json{{"A", fa.A}, {"B", fa.B}, {"C", fa.C}, {"D", fa.D}, {"E", fa.E},
                {"F", fa.F}, {"G", fa.G}, {"H", fa.H}, {"I", fa.I}, {"J", fa.J},
                {"m", fa.m}};
}

int run_separated(const CommonOpts& opts, const std::string& split, double c, bool embed,
                  const std::string& base_spec, const std::string& query_spec, int m,
                  const std::string& check, int samples, double tol) {
    SeparatedMap map;
    if (split == "kf")
        map = kf_split(c, embed);
    else if (split == "affine3")
        map = affine3_split();
    else if (split == "nonsol")
        map = nonsolution_split();
    else
        throw InvalidInput("--split must be kf, affine3 or nonsol");

    const auto [x0, y0] = parse_point2(base_spec, "--base");
    const BasePoint base{x0, y0};

    Json report = report_skeleton("separated");
    report["config"] = Json{{"split", split},   {"c", c},
                            {"embed", embed},   {"base", Json::array({x0, y0})},
                            {"m", m},           {"check", check},
                            {"tol", tol},       {"seed", opts.seed},
                            {"samples", samples}, {"query", query_spec}};

    std::ostringstream os;
    bool pass = true;
    if (check == "identities" || check == "factors") {
        const auto [qx, qy] = parse_point2(query_spec, "--query");
        const IntegralFactors fa = integral_factors(map, base, qx, qy, m);
        Json results = Json{{"factors", factors_json(fa)}};
        if (check == "identities") {
            const IdentityResiduals full = identity_residual(map, base, qx, qy, m);
            const IdentityResiduals half = identity_residual(map, base, qx, qy, m / 2);
            results["r24"] = full.r24;
            results["r24_half_m"] = half.r24;
            results["r24_order"] =
                (full.r24 > 0 && half.r24 > 0) ? std::log2(half.r24 / full.r24) : 0.0;
            results["r27"] = full.r27_valid ? Json(full.r27) : Json();
            results["r27_half_m"] = half.r27_valid ? Json(half.r27) : Json();
            pass = full.r24 <= tol;
            os << "separated: r24=" << full.r24 << " tol=" << tol;
        } else {
            os << "separated: factors at m=" << m;
        }
        report["results"] = results;
    } else if (check == "span") {
        // seeded samples in the rectangle spanned by base and query scales
        const double lo_x = std::max(map.x_lo + 1e-6, -0.95), hi_x = std::min(map.x_hi - 1e-6, 0.95);
        const double lo_y = std::max(map.y_lo + 1e-6, -0.95), hi_y = std::min(map.y_hi - 1e-6, 0.95);
        Rng rng(opts.seed);
        std::vector<std::pair<double, double>> pts;
        for (int i = 0; i < samples; ++i)
            pts.emplace_back(rng.uniform(lo_x, hi_x), rng.uniform(lo_y, hi_y));
        const SpanCheckReport rep = span_check(map, base, pts, m, tol);
        Json sample_json = Json::array();
        for (const SpanSample& s : rep.samples)
            sample_json.push_back(Json{{"x", s.x},
                                       {"y", s.y},
                                       {"dist_fprime", s.dist_fprime},
                                       {"dist_gprime", s.dist_gprime},
                                       {"dist_u", s.dist_u}});
        report["results"] = Json{{"degenerate_span", rep.degenerate_span},
                                 {"span_dim", rep.span_dim},
                                 {"max_dist_fprime", rep.max_dist_fprime},
                                 {"max_dist_gprime", rep.max_dist_gprime},
                                 {"max_dist_u", rep.max_dist_u},
                                 {"diameter", rep.diameter},
                                 {"pass", rep.pass},
                                 {"samples", sample_json}};
        pass = rep.pass;
        os << "separated: span max_dist="
           << std::max(rep.max_dist_fprime, rep.max_dist_gprime) << " tol=" << tol;
    } else {
        throw InvalidInput("--check must be identities, span or factors");
    }
    return finish(report, pass, opts.out, os.str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tangential-Laplacian toolkit"};
    app.require_subcommand(1);

    CommonOpts opts;
    // gallery
    auto* gal = app.add_subcommand("gallery", "list the analytic map catalogue");
    bool list = false;
    std::string gal_id;
    gal->add_flag("--list", list, "list all entries");
    gal->add_option("--id", gal_id, "show a single entry");
    gal->add_option("--out", opts.out, "report path");

    // residual
    auto* res = app.add_subcommand("residual", "pointwise operator sweep over a lattice");
    std::string op = "tangential", p_str, jets = "analytic";
    double res_tol = 1e-10;
    res->add_option("--map", opts.map_spec, "gallery:<id>[:<inner>] or csv:<path>")->required();
    res->add_option("--param", opts.params, "gallery parameter key=value (repeatable)");
    res->add_option("--op", op, "tangential | tension | laplacian | p | inf");
    res->add_option("--p", p_str, "exponent for --op p (number >= 2 or 'inf')");
    res->add_option("--jets", jets, "analytic | fd")->check(CLI::IsMember({"analytic", "fd"}));
    res->add_option("--box", opts.box_spec, "lo,hi per axis joined by 'x'");
    res->add_option("--n", opts.n, "lattice resolution per axis");
    res->add_option("--tol", res_tol, "pass threshold on the max normalized residual");
    res->add_option("--rel-tol", opts.rel_tol, "rank policy rel_tol override");
    res->add_option("--abs-tol", opts.abs_tol, "rank policy abs_tol override");
    res->add_option("--threads", opts.threads, "worker threads (results are thread-count independent)");
    res->add_option("--out", opts.out, "report path");

    // flatness
    auto* fl = app.add_subcommand("flatness", "rank segmentation and affine-fit report");
    double fl_tol = 1e-8;
    fl->add_option("--map", opts.map_spec, "gallery:<id>[:<inner>] or csv:<path>")->required();
    fl->add_option("--param", opts.params, "gallery parameter key=value (repeatable)");
    fl->add_option("--box", opts.box_spec, "lo,hi per axis joined by 'x'");
    fl->add_option("--n", opts.n, "lattice resolution per axis");
    fl->add_option("--tol", fl_tol, "flatness tolerance");
    fl->add_option("--rel-tol", opts.rel_tol, "rank policy rel_tol override");
    fl->add_option("--abs-tol", opts.abs_tol, "rank policy abs_tol override");
    fl->add_option("--threads", opts.threads, "accepted for interface uniformity");
    fl->add_option("--out", opts.out, "report path");

    // variational
    auto* var = app.add_subcommand("variational", "normal-perturbation minimality check");
    std::string var_p = "2", eps_spec = "0.2,0.1,0.05", sub_spec;
    int trials = 20, sub_n = 21;
    var->add_option("--map", opts.map_spec, "gallery:<id>[:<inner>] or csv:<path>")->required();
    var->add_option("--param", opts.params, "gallery parameter key=value (repeatable)");
    var->add_option("--p", var_p, "exponent (number >= 2 or 'inf')");
    var->add_option("--trials", trials, "number of seeded normal fields");
    var->add_option("--eps", eps_spec, "comma list of epsilon magnitudes (both signs run)");
    var->add_option("--sub", sub_spec, "subdomain box (default: central half of the domain)");
    var->add_option("--n", sub_n, "subdomain lattice resolution per axis");
    var->add_option("--seed", opts.seed, "base seed");
    var->add_option("--rel-tol", opts.rel_tol, "rank policy rel_tol override");
    var->add_option("--abs-tol", opts.abs_tol, "rank policy abs_tol override");
    var->add_option("--threads", opts.threads, "accepted for interface uniformity");
    var->add_option("--out", opts.out, "report path");

    // separated
    auto* sep = app.add_subcommand("separated", "separated-form identity and span checks");
    std::string split = "kf", base_spec = "0,0.39269908169872414", query_spec = "-0.1,0.3";
    std::string check = "identities";
    double c = 1.0, sep_tol = 1e-6;
    int m = 64, samples = 50;
    bool embed = false;
    sep->add_option("--split", split, "kf | affine3 | nonsol");
    sep->add_option("--c", c, "profile slope for the kf split");
    sep->add_flag("--embed", embed, "lift an N=2 split isometrically into R^3");
    sep->add_option("--base", base_spec, "base point x0,y0");
    sep->add_option("--query", query_spec, "query point x,y");
    sep->add_option("--m", m, "quadrature nodes per axis");
    sep->add_option("--check", check, "identities | span | factors");
    sep->add_option("--samples", samples, "sample count for --check span");
    sep->add_option("--tol", sep_tol, "pass threshold (r24, or span distance)");
    sep->add_option("--seed", opts.seed, "seed for span samples");
    sep->add_option("--out", opts.out, "report path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (gal->parsed()) return run_gallery(list || gal_id.empty(), gal_id, opts.out);
        if (res->parsed()) return run_residual(opts, op, p_str, jets, res_tol);
        if (fl->parsed()) return run_flatness(opts, fl_tol);
        if (var->parsed()) return run_variational(opts, var_p, trials, eps_spec, sub_spec, sub_n);
        if (sep->parsed()) {
            if (check == "span" && !sep->count("--tol")) sep_tol = 1e-10;
            return run_separated(opts, split, c, embed, base_spec, query_spec, m, check,
                                 samples, sep_tol);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
