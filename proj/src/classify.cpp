#include "bishoplab/classify.hpp"

#include <cmath>
#include <stdexcept>

namespace bishoplab {

std::string verdict_str(Verdict v) {
    switch (v) {
        case Verdict::Consistent: return "consistent";
        case Verdict::Violated: return "violated";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

namespace {

// Finite-depth verdict: consistent when the running maximum stalls or stays
// under the threshold; violated when the threshold is exceeded on an upward
// trend (two record improvements, or a rising record at the tail).
ConditionResult judge(const std::vector<double>& stats, const std::vector<size_t>& levels,
                      size_t jeff, double thr) {
    ConditionResult r;
    std::vector<double> s;
    std::vector<size_t> lv;
    for (size_t i = 0; i < stats.size(); ++i)
        if (levels[i] >= jeff) {
            s.push_back(stats[i]);
            lv.push_back(levels[i]);
        }
    if (s.size() < 2) {
        r.verdict = Verdict::Inconclusive;
        if (!s.empty()) {
            r.sup_stat = r.last_stat = s[0];
        }
        return r;
    }
    double mx = s[0];
    long arg = static_cast<long>(lv[0]);
    int records = 0;
    for (size_t i = 1; i < s.size(); ++i) {
        if (s[i] > mx) {
            mx = s[i];
            arg = static_cast<long>(lv[i]);
            ++records;
        }
    }
    r.sup_stat = mx;
    r.last_stat = s.back();
    r.records = records;
    bool exceeded = mx > thr;
    bool tail_rising = s.back() > s[s.size() - 2];
    bool last_is_max = s.back() == mx;
    if (exceeded && (records >= 2 || (records >= 1 && tail_rising && last_is_max))) {
        r.verdict = Verdict::Violated;
        r.witness_level = arg;
    } else if (records == 0 || mx <= thr) {
        r.verdict = Verdict::Consistent;
    } else {
        r.verdict = Verdict::Inconclusive;
    }
    return r;
}

}  // namespace

ClassificationReport classify(const ConvergentTable& t, size_t depth, double eps,
                              const Thresholds& thr) {
    if (depth < 3) throw std::invalid_argument("classify: depth >= 3 required");
    if (!(eps > 0 && eps < 0.5)) throw std::invalid_argument("classify: 0 < eps < 1/2");
    depth = std::min(depth, t.depth());
    ClassificationReport rep;
    rep.depth = depth;
    rep.eps = eps;
    rep.thresholds = thr;

    std::vector<double> mu, fl, mn, cm;
    std::vector<size_t> levels;
    for (size_t j = 1; j + 1 <= depth; ++j) {
        ClassRow row;
        row.j = j;
        row.q_str = t.q(j).get_str();
        row.log_q = log_big(t.q(j));
        row.log_Q = log_big(t.q(j + 1));
        row.mu = row.log_Q / row.log_q;
        row.flattot_stat = row.log_Q / std::exp((0.5 - eps) * row.log_q);
        double lq3 = row.log_q * row.log_q * row.log_q;
        double qd = std::exp(row.log_q);
        row.main_stat = row.log_Q * lq3 / qd;
        row.classm_stat = row.log_Q * row.log_q / qd;
        rep.rows.push_back(row);
        mu.push_back(row.mu);
        fl.push_back(row.flattot_stat);
        mn.push_back(row.main_stat);
        cm.push_back(row.classm_stat);
        levels.push_back(j);
    }

    size_t jeff = std::min(thr.j_min, std::max<size_t>(1, depth >= 2 ? depth - 2 : 1));
    rep.davie = judge(mu, levels, jeff, thr.mu);
    rep.flattot = judge(fl, levels, jeff, thr.flattot);
    rep.main_growth = judge(mn, levels, jeff, thr.main);
    rep.class_m = judge(cm, levels, jeff, thr.classm);
    return rep;
}

LiouvilleScan liouville_scan(const ConvergentTable& t, size_t depth, const Thresholds& thr) {
    if (depth < 3) throw std::invalid_argument("liouville_scan: depth >= 3 required");
    depth = std::min(depth, t.depth());
    LiouvilleScan scan;
    std::vector<size_t> levels;
    for (size_t j = 1; j + 1 <= depth; ++j) {
        scan.mu.push_back(log_big(t.q(j + 1)) / log_big(t.q(j)));
        levels.push_back(j);
    }
    size_t jeff = std::min(thr.j_min, std::max<size_t>(1, depth >= 2 ? depth - 2 : 1));
    ConditionResult r = judge(scan.mu, levels, jeff, thr.mu);
    scan.verdict = r.verdict;
    scan.sup_mu = r.sup_stat;
    scan.argmax_level = r.witness_level;
    return scan;
}

}  // namespace bishoplab
