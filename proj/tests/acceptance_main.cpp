// Acceptance suite: one pass/fail line per criterion, exit 0 iff all pass.
// Tolerances and runtime budgets are pinned here, not configurable.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <bishoplab/beurling.hpp>
#include <bishoplab/errors.hpp>
#include <bishoplab/birkhoff.hpp>
#include <bishoplab/classify.hpp>
#include <bishoplab/operator_sim.hpp>
#include <bishoplab/registry.hpp>
#include <bishoplab/sets.hpp>

using namespace bishoplab;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

double now_s() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

const AlphaContext& golden_ctx() {
    static AlphaContext ctx(make_irrational("golden"), 48, 192, 20000);
    return ctx;
}

// q = 5 level with Q = 10000007 >= 1e7 (fast path window at eps = 0.1)
const AlphaContext& fast_ctx() {
    static AlphaContext ctx(make_irrational("cf:2,2,2000001+const:1"), 24, 192, 60000);
    return ctx;
}

// q = 2 level with Q = 640003 >= 4 (10q)^4 (prop_bound hypotheses)
const AlphaContext& prop_ctx() {
    static AlphaContext ctx(make_irrational("cf:2,320001+const:1"), 24, 192, 12000);
    return ctx;
}

// q = 2 level with Q = 10000003 (sublevel window [277, 50000] at eps = 0.1)
const AlphaContext& sublevel_ctx() {
    static AlphaContext ctx(make_irrational("cf:2,5000001+const:1"), 24, 192, 60000);
    return ctx;
}

std::vector<double> sample_B_members(const AlphaContext& ctx, long trunc, size_t count,
                                     uint64_t seed) {
    Rng rng(seed);
    std::vector<double> out;
    while (out.size() < count) {
        double t = rng.uniform(0.05, 0.95);
        if (in_B_alpha(ctx, t, trunc).member_up_to_N) out.push_back(t);
    }
    return out;
}

// ---------------------------------------------------------------- C1
Outcome c1_cf_exactness() {
    Outcome o;
    int checked = 0;
    for (const auto& key : registry_keys()) {
        auto pq = make_irrational(key);
        if (pq.max_depth() < 33) continue;
        auto t = convergents(pq, 33);
        for (size_t j = 1; j <= 33; ++j)
            if (!t.determinant_ok(j)) {
                o.pass = false;
                o.detail += key + ": determinant fails at j=" + std::to_string(j) + "; ";
            }
        for (size_t j = 1; j <= 30; ++j)
            if (!check_convergent_gap(t, j).pass) {
                o.pass = false;
                o.detail += key + ": gap fails at j=" + std::to_string(j) + "; ";
            }
        ++checked;
    }
    if (checked < 10) {
        o.pass = false;
        o.detail += "only " + std::to_string(checked) + " registry irrationals reach depth 30";
    }
    if (o.pass) o.detail = std::to_string(checked) + " irrationals, depth 30, zero tolerance";
    return o;
}

// ---------------------------------------------------------------- C2
Outcome c2_block_identity() {
    Outcome o;
    const auto& ctx = golden_ctx();
    Rng rng(0xc2);
    double worst = 0.0;
    long pairs = 0;
    for (size_t j = 2; j <= 11; ++j) {  // q = 2, 3, 5, ..., 144
        auto dec = block_decompose(ctx, j);
        long q = static_cast<long>(dec.q.get_si());
        for (long k = 0; k <= 50; ++k) {
            for (int rep = 0; rep < 20; ++rep) {
                double t = rng.next_double();
                SumResult blk, naive;
                try {
                    blk = L_block(ctx, dec, t, k);
                    naive = L_naive(ctx, frac01(t + ctx.rot(k * q)), q);
                } catch (const precision_error&) {
                    continue;
                }
                worst = std::max(worst, std::fabs(blk.value - naive.value));
                ++pairs;
            }
        }
    }
    o.pass = worst <= 1e-9 && pairs > 9000;
    std::ostringstream ss;
    ss << pairs << " pairs, worst |L_block - L_naive| = " << worst;
    o.detail = ss.str();
    return o;
}

// ---------------------------------------------------------------- C3
Outcome c3_fast_path() {
    Outcome o;
    const auto& ctx = fast_ctx();
    const size_t level = 2;
    const double eps = 0.1;
    Level lv = ctx.level(level);
    auto w = l_fast_window(ctx, level, eps);
    if (!w.nonempty || lv.Qd < 1e7) {
        o.pass = false;
        o.detail = "constructed level unusable";
        return o;
    }
    Rng rng(0xc3);
    double worst_slack = 1e300;
    long tested = 0, violations = 0, bound_violations = 0;
    while (tested < 1000) {
        double t = rng.next_double();
        if (dist_to_int(lv.qd * t) <= 2 * eps + 1e-9) continue;
        long n = static_cast<long>(w.n_lo + rng.next_double() * (w.n_hi - w.n_lo));
        SumResult fast = L_fast(ctx, level, t, n, eps);
        SumResult naive = L_naive(ctx, t, n);
        double err = std::fabs(fast.value - naive.value);
        if (err > fast.err_bound) ++violations;
        double budget = 3.0 * eps * double(n) / lv.qd +
                        lv.qd * (1.0 - std::log(2.0 * eps / lv.qd)) + 1e-6 * std::fabs(fast.value);
        if (fast.err_bound > budget + 1e-9) ++bound_violations;
        worst_slack = std::min(worst_slack, fast.err_bound - err);
        ++tested;
    }
    o.pass = violations == 0 && bound_violations == 0;
    std::ostringstream ss;
    ss << tested << " samples in [" << w.n_lo << ", " << w.n_hi
       << "], violations = " << violations << ", min slack = " << worst_slack;
    o.detail = ss.str();
    return o;
}

// ---------------------------------------------------------------- C4
Outcome c4_measure() {
    Outcome o;
    const double bound = (2.0 + 2.0 * M_PI * M_PI / 3.0) / 20.0;  // 0.42898...
    std::ostringstream ss;
    int idx = 0;
    for (const char* key : {"golden", "liouville"}) {
        AlphaContext ctx(make_irrational(key), 34, 192, 10008);
        auto est = measure_B_alpha(ctx, 10000, 100000, 0xc4 + idx++);
        bool lower_ok = est.estimate >= 0.55;
        bool compl_ok = 1.0 - est.estimate <= bound + est.tail_deficit + 3.0 * est.mc_err;
        if (!lower_ok || !compl_ok) o.pass = false;
        ss << key << ": mu >= " << est.estimate - est.mc_err << " (est " << est.estimate << "); ";
    }
    o.detail = ss.str() + "complement budget " + std::to_string(bound);
    return o;
}

// ---------------------------------------------------------------- C5
Outcome c5_sum_identity() {
    Outcome o;
    const auto& ctx = golden_ctx();
    double worst = 0.0;
    for (long n : {0L, 1L, 10L, 100L}) {
        for (double p : {1.0, 2.0}) {
            double rel = sum_identity_check(ctx, n, p, 16, 1000);
            worst = std::max(worst, rel);
            if (rel > 1e-6) {
                o.pass = false;
                o.detail += "n=" + std::to_string(n) + " p=" + std::to_string(p) + " rel=" +
                            std::to_string(rel) + "; ";
            }
        }
    }
    if (o.pass) {
        std::ostringstream ss;
        ss << "G=2^16, n in {0,1,10,100}, p in {1,2}, worst rel err = " << worst;
        o.detail = ss.str();
    }
    return o;
}

// ---------------------------------------------------------------- C6
Outcome c6_davie_stability() {
    Outcome o;
    const auto& ctx = golden_ctx();
    const size_t level = 10;  // q = 89
    const long n_max = 10000;
    auto t400 = sample_B_members(ctx, n_max, 400, 0xc6);
    std::vector<double> t200(t400.begin(), t400.begin() + 200);
    auto fit200 = fit_constant(ctx, level, t200, n_max, false);
    auto fit400 = fit_constant(ctx, level, t400, n_max, false);
    auto adj200 = fit_constant(ctx, level, t200, n_max, true);
    auto finite = [](const ConstantFit& f) {
        return std::isfinite(f.c_upper) && std::isfinite(f.c_lower) && f.c_upper > 0 &&
               f.c_lower > 0;
    };
    double drift_up = std::fabs(fit400.c_upper - fit200.c_upper) / fit200.c_upper;
    double drift_lo = std::fabs(fit400.c_lower - fit200.c_lower) / fit200.c_lower;
    o.pass = finite(fit200) && finite(fit400) && finite(adj200) && drift_up < 0.10 &&
             drift_lo < 0.10;
    std::ostringstream ss;
    ss << "C_upper " << fit200.c_upper << " -> " << fit400.c_upper << " (drift " << drift_up
       << "), C_lower " << fit200.c_lower << " -> " << fit400.c_lower << " (drift " << drift_lo
       << "), shifted-min flags " << fit400.shifted_min_flags;
    o.detail = ss.str();
    return o;
}

// ---------------------------------------------------------------- C7
Outcome c7_prop_bound() {
    Outcome o;
    const auto& ctx = prop_ctx();
    const size_t level = 1;  // (q, Q) = (2, 640003)
    const long n_max = 10000;
    Level lv = ctx.level(level);
    if (!prop_bound(ctx, level, 1).hypotheses_ok) {
        o.pass = false;
        o.detail = "hypotheses Q >= 4(10q)^4 not met";
        return o;
    }
    // L_n(t) <= C * prop_bound with C fitted on a disjoint calibration set
    auto cal = sample_B_members(ctx, n_max, 100, 0xc7a);
    auto tst = sample_B_members(ctx, n_max, 100, 0xc7b);
    double c_cal = 0.0;
    auto sweep = [&](const std::vector<double>& ts, double C, long& viol, double& worst) {
        for (double t : ts) {
            KahanSum acc;
            for (long n = 1; n <= n_max; ++n) {
                acc.add(1.0 + std::log(frac01(t + ctx.rot(n - 1))));
                double L = acc.value();
                double pb = prop_bound(ctx, level, n).value;
                if (C == 0.0) {
                    if (L > 0) worst = std::max(worst, L / pb);
                } else if (L > C * pb) {
                    ++viol;
                }
            }
        }
    };
    long dummy = 0;
    sweep(cal, 0.0, dummy, c_cal);
    double C = 1.5 * c_cal;
    long violations = 0;
    double unused = 0;
    sweep(tst, C, violations, unused);

    // log(1 + norm) <= C' * corollary shape over |n| <= 10^4, fit on |n| <= 5000
    NormProfile prof = norm_profile(ctx, 2.0, n_max, 12, n_max, false);
    auto shape = [&](long n) {
        return lv.qd + double(n) / lv.qd * std::log(lv.qd + 1.0) +
               (double(n) + lv.Qd) / lv.Qd * std::log(double(n) + 2.0);
    };
    double cp_cal = 0.0;
    for (int fam = 0; fam < 4; ++fam)
        for (long n = 1; n <= 5000; ++n)
            cp_cal = std::max(cp_cal, prof.family(fam)[size_t(n - 1)].log1p_norm / shape(n));
    double Cp = 1.5 * cp_cal;
    long norm_violations = 0;
    for (int fam = 0; fam < 4; ++fam)
        for (long n = 5001; n <= n_max; ++n)
            if (prof.family(fam)[size_t(n - 1)].log1p_norm > Cp * shape(n)) ++norm_violations;

    o.pass = violations == 0 && norm_violations == 0;
    std::ostringstream ss;
    ss << "C = " << C << " (cal " << c_cal << "), L-violations = " << violations
       << "; C' = " << Cp << ", norm-violations = " << norm_violations;
    o.detail = ss.str();
    return o;
}

// ---------------------------------------------------------------- C8
Outcome c8_sublevel() {
    Outcome o;
    const auto& ctx = sublevel_ctx();
    auto rep = sublevel_lemma_check(ctx, 1, 0.1, 1000, 0xc8, 50000);
    bool measure_ok = rep.measured_S <= 20.0 * 0.1 + 3.0 * rep.mc_err;
    o.pass = !rep.window_empty && rep.pairs == 1000 && rep.violations == 0 && measure_ok;
    std::ostringstream ss;
    ss << rep.pairs << " pairs, violations = " << rep.violations << ", min gap = " << rep.min_gap
       << ", mu(S) = " << rep.measured_S << " <= " << 20.0 * 0.1;
    o.detail = ss.str();
    return o;
}

// ---------------------------------------------------------------- C9
Outcome c9_divergence() {
    Outcome o;
    std::ostringstream ss;
    // outside class M: certified positive increments on disjoint exact windows
    AlphaContext out_m(make_irrational("growth:qlog2@55"), 40, 192, 256);
    auto rep = divergence_diagnostic(out_m, 2.0, 3, 0.004, nullptr);
    bool incr_ok = rep.blocks.size() == 3 && rep.sublevel_mechanism;
    double min_incr = 1e300;
    for (const auto& b : rep.blocks) {
        min_incr = std::min(min_incr, b.increment);
        if (b.increment < 1e-6 || b.spot_failures > 0) incr_ok = false;
    }
    if (!rep.disjoint_ok) incr_ok = false;
    ss << "qlog2@55: 3 certified blocks, min increment = " << min_incr << ", disjoint exact; ";

    // golden-type: per-block profile increments decrease monotonically
    AlphaContext gold(make_irrational("golden"), 40, 192, 2048);
    NormProfile prof = norm_profile(gold, 2.0, 1024, 11, 1024, false);
    auto grep = divergence_diagnostic(gold, 2.0, 3, 0.004, &prof);
    bool mono = grep.blocks.size() == 3 && !grep.sublevel_mechanism;
    for (size_t i = 0; i + 1 < grep.blocks.size(); ++i)
        if (!(grep.blocks[i].increment > grep.blocks[i + 1].increment)) mono = false;
    ss << "golden increments";
    for (const auto& b : grep.blocks) ss << " " << b.increment;
    o.pass = incr_ok && mono;
    o.detail = ss.str();
    return o;
}

// ---------------------------------------------------------------- C10
Outcome c10_nilpotent() {
    Outcome o;
    auto rep = nilpotent_approx(golden_ctx(), 4, 12);
    o.pass = rep.m_star == 5 && rep.margin > 0 && rep.max_power_residual <= 1e-12 &&
             rep.norm_gap == 0.25;
    std::ostringstream ss;
    ss << "m* = " << rep.m_star << ", margin = " << rep.margin
       << ", residual = " << rep.max_power_residual << ", gap = " << rep.norm_gap << " (= 1/4)";
    o.detail = ss.str();
    return o;
}

// ---------------------------------------------------------------- C11
Outcome c11_beurling() {
    Outcome o;
    auto main_chk = is_beurling(WeightSequence::main(1.0), 10000);
    auto linear_chk = is_beurling(WeightSequence::davie(1.0), 10000);
    o.pass = main_chk.submult_ok && main_chk.tail == BeurlingCheck::Tail::Convergent &&
             linear_chk.tail == BeurlingCheck::Tail::Divergent;
    std::ostringstream ss;
    ss << "main(1): exhaustive submult ok to 1e4 (worst excess " << main_chk.worst_excess
       << "), tail bound " << main_chk.tail_bound << "; |n| weight rejected on tail";
    o.detail = ss.str();
    return o;
}

// ---------------------------------------------------------------- C12
Outcome c12_local_radius() {
    Outcome o;
    AlphaContext ctx(make_irrational("golden"), 48, 192, 8200);
    auto s = local_radius_trend(ctx, 2.0, {1024, 2048, 4096, 8192}, 12, 8192);
    o.pass = s.size() == 4;
    for (size_t k = 0; k + 1 < s.size(); ++k)
        if (!(s[k + 1] <= s[k] * 1.05)) o.pass = false;
    std::ostringstream ss;
    ss << "s(N) =";
    for (double v : s) ss << " " << v;
    ss << " (non-increasing within 5%)";
    o.detail = ss.str();
    return o;
}

// ---------------------------------------------------------------- C13
Outcome c13_commutation() {
    Outcome o;
    const double bound = 10.0 / double(1l << 14);
    double worst = 0.0;
    for (long m : {-2L, -1L, 0L, 1L, 2L}) {
        double d = commutation_check(golden_ctx(), m, 14);
        worst = std::max(worst, d);
        if (d > bound) o.pass = false;
    }
    std::ostringstream ss;
    ss << "G=2^14, m in {-2..2}, worst defect = " << worst << " <= " << bound;
    o.detail = ss.str();
    return o;
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        double budget_s;
        std::function<Outcome()> fn;
    };
    std::vector<Criterion> criteria{
        {"C1  continued-fraction exactness", 1, c1_cf_exactness},
        {"C2  blockwise identity", 10, c2_block_identity},
        {"C3  fast-path certification", 60, c3_fast_path},
        {"C4  B_alpha measure", 60, c4_measure},
        {"C5  forward+inverse integral identity", 60, c5_sum_identity},
        {"C6  Davie bracket stability", 120, c6_davie_stability},
        {"C7  general-n bound / norm bound", 120, c7_prop_bound},
        {"C8  sublevel lemma", 120, c8_sublevel},
        {"C9  divergence dichotomy", 120, c9_divergence},
        {"C10 nilpotent approximation", 30, c10_nilpotent},
        {"C11 Beurling verifier", 30, c11_beurling},
        {"C12 local-radius trend", 300, c12_local_radius},
        {"C13 commutation identity", 30, c13_commutation},
    };
    int failures = 0;
    for (auto& c : criteria) {
        double t0 = now_s();
        Outcome o;
        try {
            o = c.fn();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        double dt = now_s() - t0;
        bool in_budget = dt < c.budget_s;
        bool pass = o.pass && in_budget;
        std::printf("[%s] %s — %s (%.2fs/%gs)\n", pass ? "PASS" : "FAIL", c.name,
                    o.detail.c_str(), dt, c.budget_s);
        if (!pass) ++failures;
    }
    if (failures) std::printf("%d criterion(s) FAILED\n", failures);
    else std::printf("all 13 criteria passed\n");
    return failures == 0 ? 0 : 1;
}
