#include "bishoplab/harness.hpp"

#include <chrono>
#include <cmath>
#include <future>
#include <memory>

#include <json.hpp>

#include "bishoplab/beurling.hpp"
#include "bishoplab/birkhoff.hpp"
#include "bishoplab/cache.hpp"
#include "bishoplab/classify.hpp"
#include "bishoplab/errors.hpp"
#include "bishoplab/registry.hpp"
#include "bishoplab/sets.hpp"

namespace bishoplab {

using json = nlohmann::ordered_json;

namespace {

constexpr const char* kSchemaVersion = "bishoplab-report/1";
constexpr const char* kToolVersion = "0.1.0";

double now_ms() {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

// exact round-trip: nlohmann emits shortest-representation doubles
json profile_to_json(const NormProfile& prof) {
    json j;
    j["mu_B"] = prof.mu_B;
    j["log1p_n0"] = prof.log1p_n0;
    j["p"] = prof.p;
    j["N_trunc"] = prof.N_trunc;
    j["log2G"] = prof.log2G;
    j["alpha_key"] = prof.alpha_key;
    const char* names[4] = {"x_fwd", "x_bwd", "y_fwd", "y_bwd"};
    for (int f = 0; f < 4; ++f) {
        json fam = json::array();
        for (const auto& e : prof.family(f))
            fam.push_back(json::array({e.n, e.log1p_norm, e.log_norm, e.err, e.flagged ? 1 : 0}));
        j[names[f]] = fam;
    }
    return j;
}

bool profile_from_json(const std::string& text, NormProfile& prof) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) return false;
    try {
        prof.mu_B = j["mu_B"].get<double>();
        prof.log1p_n0 = j["log1p_n0"].get<double>();
        prof.p = j["p"].get<double>();
        prof.N_trunc = j["N_trunc"].get<long>();
        prof.log2G = j["log2G"].get<int>();
        prof.alpha_key = j["alpha_key"].get<std::string>();
        const char* names[4] = {"x_fwd", "x_bwd", "y_fwd", "y_bwd"};
        std::vector<ProfileEntry>* fams[4] = {&prof.x_fwd, &prof.x_bwd, &prof.y_fwd, &prof.y_bwd};
        for (int f = 0; f < 4; ++f) {
            fams[f]->clear();
            for (const auto& row : j[names[f]]) {
                ProfileEntry e;
                e.n = row[0].get<long>();
                e.log1p_norm = row[1].get<double>();
                e.log_norm = row[2].get<double>();
                e.err = row[3].get<double>();
                e.flagged = row[4].get<int>() != 0;
                fams[f]->push_back(e);
            }
        }
    } catch (...) {
        return false;
    }
    return true;
}

json verdict_json(const ConditionResult& c) {
    json v;
    v["verdict"] = verdict_str(c.verdict);
    v["witness_level"] = c.witness_level;
    v["sup_stat"] = c.sup_stat;
    v["last_stat"] = c.last_stat;
    return v;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const std::string& text) {
    json j = json::parse(text);
    ExperimentConfig c;
    if (j.contains("alpha")) c.alpha_key = j["alpha"].get<std::string>();
    if (j.contains("depth")) c.depth = j["depth"].get<int>();
    if (j.contains("prec_bits")) c.prec_bits = j["prec_bits"].get<long>();
    if (j.contains("log2_grid")) c.log2G = j["log2_grid"].get<int>();
    if (j.contains("trunc")) c.trunc_N = j["trunc"].get<long>();
    if (j.contains("samples")) c.mc_samples = j["samples"].get<long>();
    if (j.contains("seed")) c.seed = j["seed"].get<uint64_t>();
    if (j.contains("p")) c.p = j["p"].get<double>();
    if (j.contains("nmax")) c.n_max = j["nmax"].get<long>();
    if (j.contains("eps")) c.eps = j["eps"].get<double>();
    if (j.contains("blocks")) c.blocks = j["blocks"].get<int>();
    if (j.contains("out")) c.out_path = j["out"].get<std::string>();
    if (j.contains("cache_dir")) c.cache_dir = j["cache_dir"].get<std::string>();
    return c;
}

ExperimentConfig ExperimentConfig::from_json_file(const std::string& path) {
    return from_json(read_file(path));
}

std::string ExperimentConfig::to_json() const {
    json j;
    j["alpha"] = alpha_key;
    j["depth"] = depth;
    j["prec_bits"] = prec_bits;
    j["log2_grid"] = log2G;
    j["trunc"] = trunc_N;
    j["samples"] = mc_samples;
    j["seed"] = seed;
    j["p"] = p;
    j["nmax"] = n_max;
    j["eps"] = eps;
    j["blocks"] = blocks;
    j["out"] = out_path;
    return j.dump(2);
}

ReportBundle run(const ExperimentConfig& cfg) {
    ReportBundle bundle;
    json rep;
    json timings;
    rep["schema"] = kSchemaVersion;
    rep["tool_version"] = kToolVersion;
    rep["config"] = json::parse(cfg.to_json());

    ContentCache cache = cfg.cache_dir.empty() ? ContentCache::from_env()
                                               : ContentCache(cfg.cache_dir);

    double t0 = now_ms();
    std::unique_ptr<AlphaContext> ctx_holder;
    try {
        ctx_holder = std::make_unique<AlphaContext>(make_irrational(cfg.alpha_key),
                                                    size_t(cfg.depth), cfg.prec_bits,
                                                    std::max(cfg.trunc_N, cfg.n_max) + 8);
    } catch (const std::exception& e) {
        rep["error"] = e.what();
        bundle.ok = false;
        bundle.json = rep.dump(2) + "\n";
        bundle.timings_json = timings.dump(2) + "\n";
        atomic_write_file(cfg.out_path, bundle.json);
        atomic_write_file(cfg.out_path + ".timings.json", bundle.timings_json);
        return bundle;
    }
    const AlphaContext& ctx = *ctx_holder;
    timings["context_ms"] = now_ms() - t0;

    // --- continued fractions
    t0 = now_ms();
    {
        json cf;
        cf["depth"] = ctx.table().depth();
        bool det_ok = true, gap_ok = true;
        size_t gap_depth = ctx.table().depth() >= 3 ? ctx.table().depth() - 3 : 0;
        for (size_t j = 1; j <= ctx.table().depth(); ++j)
            det_ok = det_ok && ctx.table().determinant_ok(j);
        for (size_t j = 1; j <= gap_depth; ++j)
            gap_ok = gap_ok && check_convergent_gap(ctx.table(), j).pass;
        cf["determinant_ok"] = det_ok;
        cf["gap_inequality_ok"] = gap_ok;
        cf["q_last"] = ctx.table().q(ctx.table().depth()).get_str();
        rep["cf"] = cf;
        bundle.ok = bundle.ok && det_ok && gap_ok;
    }
    timings["cf_ms"] = now_ms() - t0;

    // --- classify, measure, profile fan out to workers; results are
    // composed in a fixed order so scheduling never shows in the report
    auto classify_task = std::async(std::launch::async, [&ctx, &cfg]() -> json {
        double w0 = now_ms();
        json cl;
        try {
            size_t cl_depth = std::min(ctx.table().depth(), ctx.pq().faithful_depth());
            ClassificationReport cr = classify(ctx.table(), cl_depth, cfg.eps);
            cl["depth"] = cr.depth;
            cl["eps"] = cr.eps;
            cl["davie_nonliouville"] = verdict_json(cr.davie);
            cl["flattot"] = verdict_json(cr.flattot);
            cl["main_growth"] = verdict_json(cr.main_growth);
            cl["class_m"] = verdict_json(cr.class_m);
            json rows = json::array();
            for (const auto& r : cr.rows) {
                json row;
                row["j"] = r.j;
                row["q"] = r.q_str;
                row["log_Q"] = r.log_Q;
                row["mu"] = r.mu;
                row["flattot_stat"] = r.flattot_stat;
                row["main_stat"] = r.main_stat;
                row["classm_stat"] = r.classm_stat;
                rows.push_back(row);
            }
            cl["rows"] = rows;
        } catch (const std::exception& e) {
            cl = json{{"refused", e.what()}};
        }
        cl["_ms_internal"] = now_ms() - w0;
        return cl;
    });

    auto measure_task = std::async(std::launch::async, [&ctx, &cfg]() {
        return measure_B_alpha(ctx, cfg.trunc_N, cfg.mc_samples, cfg.seed);
    });

    NormProfile prof;
    std::string profile_cache_state;
    auto profile_task = std::async(std::launch::async, [&ctx, &cfg, &cache, &prof,
                                                        &profile_cache_state]() {
        std::string key = "profile|v1|" + cfg.alpha_key + "|p=" + fmt_double(cfg.p) +
                          "|n=" + std::to_string(cfg.n_max) + "|G=" + std::to_string(cfg.log2G) +
                          "|N=" + std::to_string(cfg.trunc_N) +
                          "|P=" + std::to_string(cfg.prec_bits);
        std::string blob;
        bool from_cache = cache.get(key, blob) && profile_from_json(blob, prof);
        if (!from_cache) {
            prof = norm_profile(ctx, cfg.p, cfg.n_max, cfg.log2G, cfg.trunc_N);
            cache.put(key, profile_to_json(prof).dump());
        }
        profile_cache_state = from_cache ? "hit" : "miss";
    });

    t0 = now_ms();
    {
        json cl = classify_task.get();
        timings["classify_ms"] = cl.contains("_ms_internal") ? cl["_ms_internal"] : json(0.0);
        cl.erase("_ms_internal");
        rep["classify"] = cl;

        MeasureEstimate me = measure_task.get();
        json sets;
        sets["estimate"] = me.estimate;
        sets["mc_err"] = me.mc_err;
        sets["tail_deficit"] = me.tail_deficit;
        sets["trunc"] = cfg.trunc_N;
        sets["complement_bound"] = (2.0 + 2.0 * M_PI * M_PI / 3.0) / 20.0;
        rep["measure_B"] = sets;
        bundle.ok = bundle.ok &&
                    1.0 - me.estimate <= (2.0 + 2.0 * M_PI * M_PI / 3.0) / 20.0 +
                                             me.tail_deficit + 3.0 * me.mc_err;

        profile_task.get();
        json pj;
        pj["n_max"] = cfg.n_max;
        pj["mu_B_grid"] = prof.mu_B;
        pj["log1p_n0"] = prof.log1p_n0;
        pj["max_log1p_x_fwd"] = prof.x_fwd.empty() ? 0.0 : prof.x_fwd.back().log1p_norm;
        pj["max_log1p_x_bwd"] = prof.x_bwd.empty() ? 0.0 : prof.x_bwd.back().log1p_norm;
        rep["profile"] = pj;
        timings["profile_cache"] = profile_cache_state;
    }
    timings["modules_ms"] = now_ms() - t0;

    // --- verdicts
    t0 = now_ms();
    {
        json vj;
        DivergenceReport diag;
        bool have_diag = false;
        try {
            diag = divergence_diagnostic(ctx, cfg.p, cfg.blocks, 0.004, &prof);
            have_diag = true;
            json blocks = json::array();
            for (const auto& b : diag.blocks) {
                json bj;
                bj["level"] = b.level;
                bj["mechanism"] = b.mechanism;
                bj["n_lo"] = b.n_lo.get_str();
                bj["n_hi"] = b.n_hi.get_str();
                bj["increment"] = b.increment;
                blocks.push_back(bj);
            }
            vj["divergence_blocks"] = blocks;
            vj["blocks_disjoint"] = diag.disjoint_ok;
            vj["sublevel_mechanism"] = diag.sublevel_mechanism;
        } catch (const std::exception& e) {
            vj["divergence"] = json{{"refused", e.what()}};
        }
        std::vector<WeightSequence> cands{WeightSequence::davie(0.75), WeightSequence::main(1.0)};
        AtzmonReport ar = atzmon_verdict(prof, cands, have_diag ? &diag : nullptr);
        vj["atzmon"] = ar.verdict;
        json cj = json::array();
        for (const auto& c : ar.candidates) {
            json e;
            e["candidate"] = c.candidate;
            e["beurling_ok"] = c.beurling_ok;
            e["passes"] = c.passes;
            e["reason"] = c.reason;
            cj.push_back(e);
        }
        vj["candidates"] = cj;
        rep["verdicts"] = vj;
    }
    timings["verdicts_ms"] = now_ms() - t0;

    bundle.json = rep.dump(2) + "\n";
    bundle.timings_json = timings.dump(2) + "\n";
    atomic_write_file(cfg.out_path, bundle.json);
    atomic_write_file(cfg.out_path + ".timings.json", bundle.timings_json);
    return bundle;
}

std::string partial_quotients_json(const std::string& alpha_key, size_t depth) {
    PartialQuotients pq = make_irrational(alpha_key);
    size_t d = std::min(depth, pq.max_depth());
    ConvergentTable t = convergents(pq, d);
    json j;
    j["label"] = pq.label();
    j["rule"] = pq.has_rule() ? pq.rule().str() : "none";
    json quots = json::array();
    for (size_t k = 1; k <= d; ++k) quots.push_back(pq.a(k).get_str());
    j["partial_quotients"] = quots;
    json rows = json::array();
    for (size_t k = 0; k <= t.depth(); ++k) {
        json row;
        row["j"] = k;
        row["p"] = t.p(k).get_str();
        row["q"] = t.q(k).get_str();
        rows.push_back(row);
    }
    j["convergents"] = rows;
    return j.dump(2) + "\n";
}

}  // namespace bishoplab
