// bishoplab: desk-scale verification lab for Bishop operators T_alpha.
// Exit codes: 0 = ran, 1 = usage, 2 = verification failure found.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bishoplab/beurling.hpp"
#include "bishoplab/birkhoff.hpp"
#include "bishoplab/cache.hpp"
#include "bishoplab/classify.hpp"
#include "bishoplab/errors.hpp"
#include "bishoplab/harness.hpp"
#include "bishoplab/registry.hpp"
#include "bishoplab/sets.hpp"

using namespace bishoplab;
using json = nlohmann::ordered_json;

namespace {

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty())
        std::cout << text;
    else
        atomic_write_file(out_path, text);
}

AlphaContext make_ctx(const std::string& key, int depth, long prec, long rot) {
    return AlphaContext(make_irrational(key), size_t(depth), prec, rot);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bishoplab: Bishop-operator arithmetic laboratory"};
    app.require_subcommand(1);
    int exit_code = 0;

    // ---- cf
    auto* cf = app.add_subcommand("cf", "continued-fraction data for a named irrational");
    std::string cf_alpha = "golden", cf_out;
    int cf_depth = 30;
    bool cf_check = false;
    cf->add_option("--alpha", cf_alpha, "registry key");
    cf->add_option("--depth", cf_depth, "table depth");
    cf->add_option("--json", cf_out, "output path (stdout when empty)");
    cf->add_flag("--check", cf_check, "verify determinant + gap inequalities");
    cf->callback([&]() {
        emit(partial_quotients_json(cf_alpha, size_t(cf_depth)), cf_out);
        if (cf_check) {
            PartialQuotients pq = make_irrational(cf_alpha);
            size_t d = std::min(size_t(cf_depth), pq.max_depth());
            ConvergentTable t = convergents(pq, d);
            for (size_t j = 1; j <= d; ++j)
                if (!t.determinant_ok(j)) exit_code = 2;
            for (size_t j = 1; j + 3 <= d; ++j)
                if (!check_convergent_gap(t, j).pass) exit_code = 2;
            std::cerr << (exit_code == 2 ? "cf checks FAILED\n" : "cf checks ok\n");
        }
    });

    // ---- classify
    auto* cl = app.add_subcommand("classify", "growth-condition classification");
    std::string cl_alpha = "golden", cl_out;
    int cl_depth = 30;
    double cl_eps = 0.05;
    cl->add_option("--alpha", cl_alpha, "registry key");
    cl->add_option("--depth", cl_depth, "levels");
    cl->add_option("--eps", cl_eps, "flattot epsilon");
    cl->add_option("--json", cl_out, "output path");
    cl->callback([&]() {
        PartialQuotients pq = make_irrational(cl_alpha);
        size_t d = std::min(size_t(cl_depth), pq.faithful_depth());
        ConvergentTable t = convergents(pq, d);
        ClassificationReport r = classify(t, d, cl_eps);
        json j;
        j["schema"] = "bishoplab-classify/1";
        j["alpha"] = cl_alpha;
        j["depth"] = r.depth;
        j["davie_nonliouville"] = verdict_str(r.davie.verdict);
        j["flattot"] = verdict_str(r.flattot.verdict);
        j["main_growth"] = verdict_str(r.main_growth.verdict);
        j["class_m"] = verdict_str(r.class_m.verdict);
        json rows = json::array();
        for (const auto& row : r.rows)
            rows.push_back(json{{"j", row.j},
                                {"q", row.q_str},
                                {"mu", row.mu},
                                {"flattot_stat", row.flattot_stat},
                                {"main_stat", row.main_stat},
                                {"classm_stat", row.classm_stat}});
        j["rows"] = rows;
        emit(j.dump(2) + "\n", cl_out);
    });

    // ---- birkhoff
    auto* bk = app.add_subcommand("birkhoff", "Birkhoff log-sum L_n(t)");
    std::string bk_alpha = "golden", bk_method = "naive", bk_out;
    double bk_t = 0.5, bk_eps = 0.1, bk_s = 1.0;
    long bk_n = 10, bk_sweep = 0;
    int bk_level = -1;
    bk->add_option("--alpha", bk_alpha, "registry key");
    bk->add_option("--t", bk_t, "point in [0,1)");
    bk->add_option("--n", bk_n, "iterate count");
    bk->add_option("--s", bk_s, "weight exponent scale (L_{s,n} = s L_n)");
    bk->add_option("--method", bk_method, "naive|block|fast");
    bk->add_option("--level", bk_level, "convergent level (block/fast)");
    bk->add_option("--eps", bk_eps, "fast-path epsilon");
    bk->add_option("--sweep", bk_sweep, "emit CSV rows for n = 1..sweep");
    bk->add_option("--out", bk_out, "CSV path (stdout when empty)");
    bk->callback([&]() {
        AlphaContext ctx =
            make_ctx(bk_alpha, 40, 192, std::max(std::max(bk_n, bk_sweep) + 8, 1024l));
        auto eval = [&](long n) -> SumResult {
            if (bk_method == "naive") return L_naive(ctx, bk_t, n, bk_s);
            if (bk_method == "block") {
                size_t j = bk_level >= 0 ? size_t(bk_level)
                                         : size_t(ctx.find_level_with_q_at_most(BigInt(n)));
                BlockDecomposition dec = block_decompose(ctx, j);
                return L_block(ctx, dec, bk_t, n);
            }
            if (bk_method == "fast") {
                size_t j = size_t(bk_level >= 0 ? bk_level : 1);
                return L_fast(ctx, j, bk_t, n, bk_eps);
            }
            throw CLI::ValidationError("--method must be naive|block|fast");
        };
        std::string csv = "n,L_n,err_bound,method\n";
        if (bk_sweep > 0) {
            for (long n = 1; n <= bk_sweep; ++n) {
                SumResult r = eval(n);
                csv += std::to_string(n) + "," + fmt_double(r.value) + "," +
                       fmt_double(r.err_bound) + "," + bk_method + "\n";
            }
        } else {
            SumResult r = eval(bk_n);
            csv += std::to_string(bk_n) + "," + fmt_double(r.value) + "," +
                   fmt_double(r.err_bound) + "," + bk_method + "\n";
        }
        emit(csv, bk_out);
    });

    // ---- sets
    auto* st = app.add_subcommand("sets", "B_alpha and sublevel-set calculus");
    st->require_subcommand(1);
    std::string st_alpha = "golden";
    long st_trunc = 10000, st_samples = 100000;
    uint64_t st_seed = 1;
    int st_level = 2, st_orbit = 20;
    double st_eps = 0.1;
    long st_pairs = 1000;
    auto* st_measure = st->add_subcommand("measure", "MC measure of truncated B_alpha");
    st_measure->add_option("--alpha", st_alpha, "registry key");
    st_measure->add_option("--trunc", st_trunc, "membership truncation N");
    st_measure->add_option("--samples", st_samples, "MC samples");
    st_measure->add_option("--seed", st_seed, "RNG seed");
    st_measure->callback([&]() {
        AlphaContext ctx = make_ctx(st_alpha, 40, 192, st_trunc + 8);
        MeasureEstimate m = measure_B_alpha(ctx, st_trunc, st_samples, st_seed);
        std::printf("estimate,mc_err,tail_deficit\n%s,%s,%s\n", fmt_double(m.estimate).c_str(),
                    fmt_double(m.mc_err).c_str(), fmt_double(m.tail_deficit).c_str());
        double bound = (2.0 + 2.0 * M_PI * M_PI / 3.0) / 20.0;
        if (1.0 - m.estimate > bound + m.tail_deficit + 3.0 * m.mc_err) exit_code = 2;
    });
    auto* st_cov = st->add_subcommand("coverage", "ergodic coverage of union tau^-j(B)");
    st_cov->add_option("--alpha", st_alpha, "registry key");
    st_cov->add_option("--trunc", st_trunc, "membership truncation");
    st_cov->add_option("--orbit", st_orbit, "max |j|");
    st_cov->add_option("--samples", st_samples, "MC samples");
    st_cov->add_option("--seed", st_seed, "RNG seed");
    st_cov->callback([&]() {
        AlphaContext ctx = make_ctx(st_alpha, 40, 192, std::max(st_trunc, long(st_orbit)) + 8);
        auto curve = ergodic_coverage(ctx, st_trunc, st_orbit, st_samples, st_seed);
        std::printf("k,coverage\n");
        for (size_t k = 0; k < curve.size(); ++k)
            std::printf("%zu,%s\n", k, fmt_double(curve[k]).c_str());
    });
    auto* st_sub = st->add_subcommand("sublevel", "sublevel-lemma verification");
    st_sub->add_option("--alpha", st_alpha, "registry key");
    st_sub->add_option("--level", st_level, "convergent level j");
    st_sub->add_option("--eps", st_eps, "epsilon in (0,1/4)");
    st_sub->add_option("--pairs", st_pairs, "sampled (t,n) pairs");
    st_sub->add_option("--seed", st_seed, "RNG seed");
    st_sub->callback([&]() {
        AlphaContext ctx = make_ctx(st_alpha, 40, 192, 110000);
        SublevelCheckReport r = sublevel_lemma_check(ctx, size_t(st_level), st_eps, st_pairs, st_seed);
        if (r.window_empty) {
            std::printf("window empty: %s (required Q ~ %s)\n", r.note.c_str(),
                        fmt_double(r.required_Q).c_str());
            return;
        }
        std::printf("pairs,violations,min_gap,measured_S\n%ld,%ld,%s,%s\n", r.pairs, r.violations,
                    fmt_double(r.min_gap).c_str(), fmt_double(r.measured_S).c_str());
        if (r.violations > 0) exit_code = 2;
    });

    // ---- norms
    auto* nm = app.add_subcommand("norms", "iterate-norm profile CSV");
    std::string nm_alpha = "golden", nm_out = "profile.csv";
    double nm_p = 2.0;
    long nm_nmax = 256, nm_trunc = 2048;
    int nm_g = 12;
    nm->add_option("--alpha", nm_alpha, "registry key");
    nm->add_option("--p", nm_p, "L^p exponent");
    nm->add_option("--nmax", nm_nmax, "max |n|");
    nm->add_option("--out", nm_out, "CSV path");
    nm->add_option("--log2g", nm_g, "log2 grid size");
    nm->add_option("--trunc", nm_trunc, "B truncation");
    nm->callback([&]() {
        AlphaContext ctx = make_ctx(nm_alpha, 40, 192, std::max(nm_nmax, nm_trunc) + 8);
        NormProfile prof = norm_profile(ctx, nm_p, nm_nmax, nm_g, std::max(nm_trunc, nm_nmax));
        emit(prof.csv(), nm_out);
        std::cerr << "profile written to " << nm_out << "\n";
    });

    // ---- nilpotent
    auto* np = app.add_subcommand("nilpotent", "nilpotent approximant diagnostics");
    std::string np_alpha = "golden";
    long np_n = 4;
    int np_g = 12;
    np->add_option("--alpha", np_alpha, "registry key");
    np->add_option("--n", np_n, "cutoff parameter (phi_n)");
    np->add_option("--log2g", np_g, "log2 grid size");
    np->callback([&]() {
        AlphaContext ctx = make_ctx(np_alpha, 40, 192, 1024);
        NilpotentReport r = nilpotent_approx(ctx, np_n, np_g);
        std::printf("m_star,margin,max_power_residual,norm_gap\n%ld,%s,%s,%s\n", r.m_star,
                    fmt_double(r.margin).c_str(), fmt_double(r.max_power_residual).c_str(),
                    fmt_double(r.norm_gap).c_str());
        if (r.max_power_residual > 1e-12) exit_code = 2;
    });

    // ---- commute
    auto* cm = app.add_subcommand("commute", "commutation identity defect");
    std::string cm_alpha = "golden";
    long cm_m = 1;
    int cm_g = 14;
    cm->add_option("--alpha", cm_alpha, "registry key");
    cm->add_option("--m", cm_m, "frequency");
    cm->add_option("--log2g", cm_g, "log2 grid size");
    cm->callback([&]() {
        AlphaContext ctx = make_ctx(cm_alpha, 40, 192, 64);
        double d = commutation_check(ctx, cm_m, cm_g);
        std::printf("m,defect,bound\n%ld,%s,%s\n", cm_m, fmt_double(d).c_str(),
                    fmt_double(10.0 / double(1l << cm_g)).c_str());
        if (d > 10.0 / double(1l << cm_g)) exit_code = 2;
    });

    // ---- atzmon
    auto* at = app.add_subcommand("atzmon", "Beurling domination verdict");
    std::string at_alpha = "golden", at_cands = "davie:0.75,main:1.0", at_out;
    long at_nmax = 512, at_trunc = 2048;
    double at_p = 2.0;
    int at_g = 11;
    at->add_option("--alpha", at_alpha, "registry key");
    at->add_option("--candidates", at_cands, "comma-separated weight specs");
    at->add_option("--nmax", at_nmax, "profile range");
    at->add_option("--p", at_p, "L^p exponent");
    at->add_option("--log2g", at_g, "log2 grid size");
    at->add_option("--json", at_out, "output path");
    at->callback([&]() {
        AlphaContext ctx = make_ctx(at_alpha, 40, 192, std::max(at_nmax, at_trunc) + 8);
        NormProfile prof = norm_profile(ctx, at_p, at_nmax, at_g, std::max(at_trunc, at_nmax));
        std::vector<WeightSequence> cands;
        std::stringstream ss(at_cands);
        std::string tok;
        while (std::getline(ss, tok, ',')) cands.push_back(WeightSequence::parse(tok));
        DivergenceReport diag;
        const DivergenceReport* dp = nullptr;
        try {
            diag = divergence_diagnostic(ctx, at_p, 3, 0.004, &prof);
            dp = &diag;
        } catch (const std::exception&) {
        }
        AtzmonReport r = atzmon_verdict(prof, cands, dp);
        json j;
        j["schema"] = "bishoplab-atzmon/1";
        j["alpha"] = at_alpha;
        j["verdict"] = r.verdict;
        j["range_N"] = r.range_N;
        json cj = json::array();
        for (const auto& c : r.candidates) {
            json e;
            e["candidate"] = c.candidate;
            e["beurling_ok"] = c.beurling_ok;
            e["passes"] = c.passes;
            e["reason"] = c.reason;
            json fits = json::array();
            for (const auto& f : c.fits)
                fits.push_back(json{{"family", f.family},
                                    {"c", f.c},
                                    {"binding_n", f.binding_n},
                                    {"boundary", f.boundary_binding}});
            e["fits"] = fits;
            cj.push_back(e);
        }
        j["candidates"] = cj;
        emit(j.dump(2) + "\n", at_out);
    });

    // ---- diverge
    auto* dv = app.add_subcommand("diverge", "Theorem-4.1 divergence diagnostic");
    std::string dv_alpha = "growth:qlog2@55";
    int dv_blocks = 3;
    double dv_p = 2.0, dv_eps = 0.004;
    long dv_nmax = 256;
    dv->add_option("--alpha", dv_alpha, "registry key");
    dv->add_option("--blocks", dv_blocks, "block count");
    dv->add_option("--p", dv_p, "L^p exponent");
    dv->add_option("--eps", dv_eps, "sublevel epsilon");
    dv->add_option("--nmax", dv_nmax, "profile range for the fallback mode");
    dv->callback([&]() {
        AlphaContext ctx = make_ctx(dv_alpha, 40, 192, std::max(dv_nmax * 4, 2048l));
        NormProfile prof;
        bool have_prof = false;
        try {
            prof = norm_profile(ctx, dv_p, dv_nmax, 11, dv_nmax * 4);
            have_prof = true;
        } catch (const std::exception&) {
        }
        DivergenceReport r =
            divergence_diagnostic(ctx, dv_p, dv_blocks, dv_eps, have_prof ? &prof : nullptr);
        std::printf("level,mechanism,n_lo,n_hi,increment\n");
        for (const auto& b : r.blocks)
            std::printf("%zu,%s,%s,%s,%s\n", b.level, b.mechanism.c_str(), b.n_lo.get_str().c_str(),
                        b.n_hi.get_str().c_str(), fmt_double(b.increment).c_str());
        std::printf("disjoint,%d\n", r.disjoint_ok ? 1 : 0);
        if (!r.disjoint_ok) exit_code = 2;
    });

    // ---- report
    auto* rp = app.add_subcommand("report", "full experiment bundle");
    std::string rp_config, rp_alpha = "golden", rp_out = "report.json";
    long rp_trunc = 500, rp_samples = 20000, rp_nmax = 128;
    uint64_t rp_seed = 1;
    rp->add_option("--config", rp_config, "JSON config file (flags override nothing)");
    rp->add_option("--alpha", rp_alpha, "registry key");
    rp->add_option("--out", rp_out, "report path");
    rp->add_option("--trunc", rp_trunc, "B truncation");
    rp->add_option("--samples", rp_samples, "MC samples");
    rp->add_option("--seed", rp_seed, "seed");
    rp->add_option("--nmax", rp_nmax, "profile range");
    rp->callback([&]() {
        ExperimentConfig cfg;
        if (!rp_config.empty()) {
            cfg = ExperimentConfig::from_json_file(rp_config);
        } else {
            cfg.alpha_key = rp_alpha;
            cfg.out_path = rp_out;
            cfg.trunc_N = rp_trunc;
            cfg.mc_samples = rp_samples;
            cfg.seed = rp_seed;
            cfg.n_max = rp_nmax;
        }
        ReportBundle b = run(cfg);
        std::cerr << "report written to " << cfg.out_path << "\n";
        if (!b.ok) exit_code = 2;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);  // usage errors exit 1 (CLI11 convention via exit())
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_code;
}
