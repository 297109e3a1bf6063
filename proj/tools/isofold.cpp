#include "CLI11.hpp"
#include "json.hpp"

#include "iso/bounds.hpp"
#include "iso/catalog.hpp"
#include "iso/covering.hpp"
#include "iso/hardness.hpp"
#include "iso/ilp_export.hpp"
#include "iso/improve.hpp"
#include "iso/lp_refine.hpp"
#include "iso/postman.hpp"
#include "iso/search.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using nlohmann::json;
using namespace iso;

namespace {

constexpr int kSchemaVersion = 1;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

MetricGraph load_graph(const std::string& arg) {
    if (std::filesystem::exists(arg)) {
        std::ifstream in(arg);
        if (!in) throw UsageError("cannot read " + arg);
        return parse_graph(in);
    }
    if (auto p = platonic_from_name(arg)) return platonic(*p);
    throw UsageError("no such file or catalog solid: " + arg);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(bool as_json, const json& j, const std::string& text) {
    if (as_json) {
        json out = j;
        out["schema_version"] = kSchemaVersion;
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << text;
    }
}

Rat opt_rat(const std::string& text, const char* what) {
    auto r = parse_rational(text);
    if (!r) throw UsageError(std::string("malformed rational for ") + what + ": " + text);
    return *r;
}

std::string bound_line(const LowerBoundResult& lb) {
    return format_rational(lb.value) + (lb.strict ? " (strict)" : " (non-strict)");
}

void write_cert_file(const std::string& path, const FoldingMap& fm, const MetricGraph& src,
                     const MetricGraph& dst) {
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write " + path);
    write_certificate(out, fm, src, dst);
}

int run(int argc, char** argv) {
    CLI::App app{"exact solver and verifier for folding one metric graph onto another"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "structured output");
    int rc = 0;

    // catalog
    auto* cat = app.add_subcommand("catalog", "built-in solid graphs and their bound table");
    std::string cat_name;
    bool cat_table = false;
    cat->add_option("name", cat_name, "solid name");
    cat->add_flag("--table", cat_table, "print the 5x5 published bound table");
    cat->callback([&] {
        if (cat_table) {
            std::ostringstream out;
            json jt = json::array();
            for (auto s : all_platonics) {
                out << platonic_name(s) << ":";
                for (auto d : all_platonics) {
                    BoundInterval b = published_bounds(s, d);
                    out << "  " << (b.lower_strict ? "(" : "[") << format_rational(b.lower) << ", "
                        << format_rational(b.upper) << "]";
                    if (b.origin == BoundOrigin::Topological) out << "*";
                    jt.push_back({{"src", platonic_name(s)},
                                  {"dst", platonic_name(d)},
                                  {"lower", format_rational(b.lower)},
                                  {"lower_strict", b.lower_strict},
                                  {"upper", format_rational(b.upper)},
                                  {"topological", b.origin == BoundOrigin::Topological}});
                }
                out << "\n";
            }
            emit(as_json, {{"table", jt}}, out.str());
            return;
        }
        auto p = platonic_from_name(cat_name);
        if (!p) throw UsageError("unknown solid: " + cat_name);
        MetricGraph g = platonic(*p);
        std::ostringstream out;
        write_graph(out, g);
        emit(as_json,
             {{"name", platonic_name(*p)},
              {"vertices", g.vertex_count()},
              {"edges", g.edge_count()},
              {"odd_vertices", odd_degree_count(g)},
              {"perimeter", format_rational(g.perimeter())},
              {"graph", out.str()}},
             out.str());
    });

    // bounds
    auto* bnd = app.add_subcommand("bounds", "lower bound on the optimal scale factor");
    std::string b_src, b_dst;
    bnd->add_option("src", b_src)->required();
    bnd->add_option("dst", b_dst)->required();
    bnd->callback([&] {
        MetricGraph s = load_graph(b_src), d = load_graph(b_dst);
        LowerBoundResult lb = improved_lower(s, d);
        std::ostringstream out;
        out << bound_line(lb) << "\n";
        out << "components: (" << format_rational(lb.perimeter_t) << " + "
            << format_rational(lb.doubling_term) << ") / " << format_rational(lb.perimeter_s)
            << "  [o_t=" << lb.odd_target_vertices << ", n_s=" << lb.source_vertices << "]\n";
        json j = {{"value", format_rational(lb.value)},
                  {"strict", lb.strict},
                  {"perimeter_t", format_rational(lb.perimeter_t)},
                  {"doubling_term", format_rational(lb.doubling_term)},
                  {"perimeter_s", format_rational(lb.perimeter_s)},
                  {"odd_target_vertices", lb.odd_target_vertices},
                  {"source_vertices", lb.source_vertices},
                  {"non_uniform_fallback", lb.non_uniform_fallback}};
        auto ps = platonic_from_name(b_src), pd = platonic_from_name(b_dst);
        if (ps && pd) {
            BoundInterval pub = published_bounds(*ps, *pd);
            if (pub.origin == BoundOrigin::Topological) {
                out << "published lower bound: " << format_rational(pub.lower)
                    << " (topological)\n";
                j["published_lower"] = format_rational(pub.lower);
                j["published_topological"] = true;
            }
        }
        emit(as_json, j, out.str());
    });

    // postman
    auto* pm = app.add_subcommand("postman", "shortest walk covering every edge");
    std::string pm_graph, pm_srclen;
    bool pm_open = false;
    pm->add_option("dst", pm_graph)->required();
    pm->add_flag("--open", pm_open, "open walk, free endpoints");
    pm->add_option("--source-length", pm_srclen, "cycle-source length; also prints the scale");
    pm->callback([&] {
        MetricGraph g = load_graph(pm_graph);
        Rat len = pm_open ? postman_open(g) : postman_closed(g);
        std::ostringstream out;
        out << format_rational(len) << "\n";
        json j = {{"length", format_rational(len)}, {"open", pm_open}};
        if (!pm_srclen.empty()) {
            Rat scale = optimal_scale_cycle_source(opt_rat(pm_srclen, "--source-length"), g);
            out << "scale: " << format_rational(scale) << "\n";
            j["scale"] = format_rational(scale);
        }
        emit(as_json, j, out.str());
    });

    // solve
    auto* sv = app.add_subcommand("solve", "grid search for a covering");
    std::string sv_src, sv_dst, sv_alpha, sv_scale_max, sv_out;
    unsigned sv_q = 1;
    double sv_time = 600.0;
    std::uint64_t sv_seed = 0;
    int sv_workers = 1;
    sv->add_option("src", sv_src)->required();
    sv->add_option("dst", sv_dst)->required();
    sv->add_option("--alpha", sv_alpha, "decide this scale instead of minimizing");
    sv->add_option("--q", sv_q, "grid granularity");
    sv->add_option("--scale-max", sv_scale_max);
    sv->add_option("--time", sv_time, "time budget in seconds");
    sv->add_option("--seed", sv_seed);
    sv->add_option("--workers", sv_workers, "accepted for compatibility; search is sequential");
    sv->add_option("--out", sv_out, "certificate output file");
    sv->callback([&] {
        MetricGraph s = load_graph(sv_src), d = load_graph(sv_dst);
        SearchConfig cfg;
        cfg.q = sv_q;
        cfg.time_budget_seconds = sv_time;
        cfg.seed = sv_seed;
        if (!sv_scale_max.empty()) cfg.scale_max = opt_rat(sv_scale_max, "--scale-max");
        std::ostringstream out;
        json j;
        if (!sv_alpha.empty()) {
            DecideResult r = decide(s, d, opt_rat(sv_alpha, "--alpha"), cfg);
            const char* v = r.verdict == Verdict::Feasible    ? "feasible"
                            : r.verdict == Verdict::Infeasible ? "infeasible"
                                                               : "timeout";
            out << v << "\n";
            j = {{"verdict", v}, {"nodes", r.nodes}, {"bound_pruned", r.bound_pruned}};
            if (r.certificate && !sv_out.empty()) write_cert_file(sv_out, *r.certificate, s, d);
            rc = r.verdict == Verdict::Feasible ? 0 : r.verdict == Verdict::Infeasible ? 1 : 2;
        } else {
            MinimizeResult r = minimize(s, d, cfg);
            if (r.verdict == Verdict::Feasible) {
                out << "alpha: " << format_rational(*r.alpha) << "\n";
                j = {{"verdict", "feasible"}, {"alpha", format_rational(*r.alpha)}};
                if (!sv_out.empty()) write_cert_file(sv_out, *r.certificate, s, d);
                rc = 0;
            } else {
                const char* v = r.verdict == Verdict::Infeasible ? "infeasible" : "timeout";
                out << v << "\n";
                j = {{"verdict", v}};
                rc = r.verdict == Verdict::Infeasible ? 1 : 2;
            }
        }
        emit(as_json, j, out.str());
    });

    // verify
    auto* vf = app.add_subcommand("verify", "check a covering certificate");
    std::string vf_src, vf_dst, vf_cert;
    vf->add_option("src", vf_src)->required();
    vf->add_option("dst", vf_dst)->required();
    vf->add_option("cert", vf_cert)->required();
    vf->callback([&] {
        MetricGraph s = load_graph(vf_src), d = load_graph(vf_dst);
        std::ifstream in(vf_cert);
        if (!in) throw UsageError("cannot read " + vf_cert);
        FoldingMap fm = parse_certificate(in, s, d);
        VerifyReport rep = verify(s, d, fm);
        std::ostringstream out;
        json j = {{"accepted", rep.accepted},
                  {"scale", format_rational(fm.scale)},
                  {"doubled", format_rational(rep.doubled)},
                  {"total_routed", format_rational(rep.total_routed)},
                  {"total_budget", format_rational(rep.total_budget)},
                  {"errors", rep.errors}};
        if (rep.accepted) {
            out << "accepted\ndoubled: " << format_rational(rep.doubled) << "\n";
        } else {
            out << "rejected\n";
            for (const auto& e : rep.errors) out << "  " << e << "\n";
            rc = 1;
        }
        emit(as_json, j, out.str());
    });

    // refine
    auto* rf = app.add_subcommand("refine", "re-optimize a certificate's free positions");
    std::string rf_src, rf_dst, rf_cert, rf_out;
    int rf_c = -1;
    rf->add_option("src", rf_src)->required();
    rf->add_option("dst", rf_dst)->required();
    rf->add_option("cert", rf_cert)->required();
    rf->add_option("--c", rf_c, "max auxiliaries per target edge");
    rf->add_option("--out", rf_out);
    rf->callback([&] {
        MetricGraph s = load_graph(rf_src), d = load_graph(rf_dst);
        std::ifstream in(rf_cert);
        if (!in) throw UsageError("cannot read " + rf_cert);
        FoldingMap fm = parse_certificate(in, s, d);
        RefineResult r = refine(s, d, fm, rf_c);
        if (r.status != LpStatus::Optimal) {
            emit(as_json, {{"status", "infeasible"}}, "infeasible skeleton\n");
            rc = 1;
            return;
        }
        std::ostringstream out;
        out << "scale: " << format_rational(r.scale) << "\n";
        if (!rf_out.empty()) write_cert_file(rf_out, r.certificate, s, d);
        emit(as_json, {{"status", "optimal"}, {"scale", format_rational(r.scale)}}, out.str());
    });

    // improve
    auto* im = app.add_subcommand("improve", "alternate search and refinement");
    std::string im_src, im_dst, im_rho, im_eps, im_out;
    int im_rounds = 8;
    std::uint64_t im_seed = 0;
    unsigned im_q = 2;
    double im_time = 60.0;
    im->add_option("src", im_src)->required();
    im->add_option("dst", im_dst)->required();
    im->add_option("--rounds", im_rounds);
    im->add_option("--rho", im_rho, "frozen fraction per round");
    im->add_option("--eps", im_eps, "intermediate worsening tolerance");
    im->add_option("--seed", im_seed);
    im->add_option("--q", im_q, "per-round grid granularity");
    im->add_option("--time", im_time, "per-round time budget in seconds");
    im->add_option("--out", im_out);
    im->callback([&] {
        MetricGraph s = load_graph(im_src), d = load_graph(im_dst);
        ImproveConfig cfg;
        cfg.rounds = im_rounds;
        cfg.seed = im_seed;
        cfg.round_q = im_q;
        cfg.round_time_budget_seconds = im_time;
        if (!im_rho.empty()) cfg.keep_fraction = opt_rat(im_rho, "--rho");
        if (!im_eps.empty()) cfg.worsen_tolerance = opt_rat(im_eps, "--eps");
        ImproveResult r = improve(s, d, cfg);
        std::ostringstream out;
        json jr = json::array();
        for (const auto& t : r.trace) {
            const char* v = t.verdict == Verdict::Feasible    ? "feasible"
                            : t.verdict == Verdict::Infeasible ? "infeasible"
                                                               : "timeout";
            out << "round " << t.round << ": target " << format_rational(t.target) << " " << v;
            if (t.refined) out << " refined " << format_rational(*t.refined);
            if (t.new_best) out << " (new best)";
            out << "\n";
            jr.push_back({{"round", t.round},
                          {"target", format_rational(t.target)},
                          {"verdict", v},
                          {"refined", t.refined ? format_rational(*t.refined) : ""},
                          {"new_best", t.new_best}});
        }
        if (!r.best) {
            out << (r.verdict == Verdict::Timeout ? "timeout\n" : "infeasible\n");
            emit(as_json, {{"verdict", r.verdict == Verdict::Timeout ? "timeout" : "infeasible"}},
                 out.str());
            rc = r.verdict == Verdict::Timeout ? 2 : 1;
            return;
        }
        out << "best: " << format_rational(r.best_scale) << "\n";
        if (!im_out.empty()) write_cert_file(im_out, *r.best, s, d);
        emit(as_json, {{"best", format_rational(r.best_scale)}, {"trace", jr}}, out.str());
    });

    // export-ilp
    auto* ex = app.add_subcommand("export-ilp", "emit the full mixed-integer model");
    std::string ex_src, ex_dst, ex_alpha, ex_fmt = "lp", ex_out, ex_import;
    int ex_c = 0;
    ex->add_option("src", ex_src)->required();
    ex->add_option("dst", ex_dst)->required();
    ex->add_option("--c", ex_c, "auxiliary vertices per target edge");
    ex->add_option("--alpha", ex_alpha, "scale bound, default |E(dst)|");
    ex->add_option("--format", ex_fmt)->check(CLI::IsMember({"lp", "mps"}));
    ex->add_option("--out", ex_out);
    ex->add_option("--import-solution", ex_import,
                   "reconstruct a certificate from solver variable values and verify it");
    ex->callback([&] {
        MetricGraph s = load_graph(ex_src), d = load_graph(ex_dst);
        if (!ex_import.empty()) {
            FoldingMap fm = fold_from_solution(slurp(ex_import), s, d, ex_c);
            VerifyReport rep = verify(s, d, fm);
            std::ostringstream out;
            out << (rep.accepted ? "accepted" : "rejected") << "\nscale: "
                << format_rational(fm.scale) << "\n";
            emit(as_json,
                 {{"accepted", rep.accepted}, {"scale", format_rational(fm.scale)},
                  {"errors", rep.errors}},
                 out.str());
            if (!rep.accepted) rc = 1;
            return;
        }
        std::optional<Rat> alpha;
        if (!ex_alpha.empty()) alpha = opt_rat(ex_alpha, "--alpha");
        IlpModel m = build_model(s, d, ex_c, alpha);
        std::string text = write_model(m, ex_fmt == "lp" ? IlpFormat::LpText : IlpFormat::Mps);
        if (!ex_out.empty()) {
            std::ofstream out(ex_out);
            if (!out) throw UsageError("cannot write " + ex_out);
            out << text;
            std::ostringstream msg;
            msg << "wrote " << ex_out << " (" << m.vars.size() << " vars, " << m.cons.size()
                << " rows)\n";
            emit(as_json,
                 {{"file", ex_out}, {"vars", m.vars.size()}, {"constraints", m.cons.size()}},
                 msg.str());
        } else {
            std::cout << text;
        }
    });

    // gadget
    auto* gd = app.add_subcommand("gadget", "set-cover reduction instance generator");
    std::string gd_inst, gd_prefix = "gadget";
    int gd_a = 0;
    bool gd_dp = false;
    gd->add_option("instance", gd_inst)->required();
    gd->add_option("--a", gd_a, "anchor count, default 4|C|+1");
    gd->add_flag("--dp", gd_dp, "also emit the expanded exact-optimum pair");
    gd->add_option("--out-prefix", gd_prefix);
    gd->callback([&] {
        SetCoverInstance inst = parse_set_cover_string(slurp(gd_inst));
        int a = gd_a > 0 ? gd_a : 4 * static_cast<int>(inst.sets.size()) + 1;
        auto write_pair = [&](const ReductionOutput& r, const std::string& tag) {
            std::ofstream so(gd_prefix + tag + "_source.graph"),
                to(gd_prefix + tag + "_target.graph");
            if (!so || !to) throw UsageError("cannot write gadget files");
            write_graph(so, r.source);
            write_graph(to, r.target);
        };
        std::ostringstream out;
        json j;
        if (gd_dp) {
            auto [p, pp] = generate_dp_variant(inst, inst, a);
            write_pair(p, "_p");
            write_pair(pp, "_pprime");
            for (const auto& n : p.notes) out << n << "\n";
            for (const auto& n : pp.notes) out << n << "\n";
            j = {{"notes_p", p.notes}, {"notes_pprime", pp.notes}, {"anchors", a}};
        } else {
            ReductionOutput r = generate(inst, a);
            write_pair(r, "");
            for (const auto& n : r.notes) out << n << "\n";
            j = {{"notes", r.notes}, {"anchors", a}};
        }
        emit(as_json, j, out.str());
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 3;
    }
    return rc;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
