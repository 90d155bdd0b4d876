#ifndef BISHOPLAB_CLASSIFY_HPP
#define BISHOPLAB_CLASSIFY_HPP

#include <string>
#include <vector>

#include "bishoplab/convergents.hpp"

namespace bishoplab {

enum class Verdict { Consistent, Violated, Inconclusive };
std::string verdict_str(Verdict v);

// Desk-scale separators for the four growth conditions; all configurable.
// The conditions are asymptotic, so verdicts are finite-depth statements
// with trend information, never limit claims.
struct Thresholds {
    double mu = 3.0;       // Davie non-Liouville: mu_j = log q_{j+1}/log q_j
    double flattot = 4.0;  // log q_{j+1} / q_j^(1/2-eps)
    double main = 50.0;    // log q_{j+1} (log q_j)^3 / q_j
    double classm = 2.0;   // log q_{j+1} log q_j / q_j
    size_t j_min = 3;      // ignore early transients; loglog q_j defined
};

struct ClassRow {
    size_t j;
    std::string q_str;  // decimal
    double log_q, log_Q;
    double mu, flattot_stat, main_stat, classm_stat;
};

struct ConditionResult {
    Verdict verdict = Verdict::Inconclusive;
    long witness_level = -1;  // level carrying a violation
    double sup_stat = 0.0;
    double last_stat = 0.0;
    int records = 0;  // running-max improvements after the first considered level
};

struct ClassificationReport {
    std::vector<ClassRow> rows;  // j = 1 .. depth-1
    ConditionResult davie, flattot, main_growth, class_m;
    size_t depth;
    double eps;
    Thresholds thresholds;
};

ClassificationReport classify(const ConvergentTable& t, size_t depth, double eps,
                              const Thresholds& thr = Thresholds{});

struct LiouvilleScan {
    Verdict verdict;  // Violated = Liouville-consistent, Consistent = non-Liouville
    double sup_mu;
    long argmax_level;
    std::vector<double> mu;
};

LiouvilleScan liouville_scan(const ConvergentTable& t, size_t depth,
                             const Thresholds& thr = Thresholds{});

}  // namespace bishoplab

#endif
