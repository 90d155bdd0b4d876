#ifndef BISHOPLAB_BEURLING_HPP
#define BISHOPLAB_BEURLING_HPP

#include <string>
#include <vector>

#include "bishoplab/alpha_context.hpp"
#include "bishoplab/operator_sim.hpp"

namespace bishoplab {

// Candidate Beurling weight: rho_0 = 1, rho_n >= 1, symmetric in n.
// Named families carry a closed-form rule so the tail test can integrate
// past any finite table.
struct WeightSequence {
    enum class Family { Davie, Flattot, Main, Tabulated };
    Family family = Family::Main;
    double rho = 0.75;      // davie: log rho_n = |n|^rho
    double sigma = 2.0;     // flattot: log rho_n = c_sigma |n| / log^sigma(2+|n|)
    double c_sigma = 1.0;
    double c = 1.0;         // main: log rho_n = c |n| / (log(2+|n|) (loglog(4+|n|))^2)
    std::vector<double> table;  // tabulated log rho_|n|

    static WeightSequence davie(double rho);
    static WeightSequence flattot(double sigma, double c_sigma);
    static WeightSequence main(double c);
    static WeightSequence tabulated(std::vector<double> log_rho);
    // "davie:0.75", "main:1.0", "flattot:2.0:1.0"
    static WeightSequence parse(const std::string& spec);

    double log_rho(long n) const;  // clamped at 0 so rho_n >= 1, rho_0 = 1
    bool has_rule() const { return family != Family::Tabulated; }
    std::string name() const;
};

struct BeurlingCheck {
    bool submult_ok = false;
    long worst_m = 0, worst_n = 0;
    double worst_excess = 0.0;  // max of log rho_{m+n} - log rho_m - log rho_n
    double tail_partial = 0.0;  // sum_{|n| <= N} log rho_n/(1+n^2)
    double tail_bound = 0.0;    // integral-test bound on the remainder
    enum class Tail { Convergent, Divergent, Unknown } tail = Tail::Unknown;
    long N = 0;
};

// Exhaustive submultiplicativity over |m|,|n|,|m+n| <= N plus the
// integral-test verdict for the family's tail.
BeurlingCheck is_beurling(const WeightSequence& w, long N);

struct Domination {
    double c = 0.0;  // minimal c with a_n <= c rho_n on the range
    std::vector<long> tight;
};
// log_a[k] is log a_k for k = 0..N (one-sided; families are symmetric).
Domination dominates(const std::vector<double>& log_a, const WeightSequence& w, long N);

// One window of the Theorem-4.1 mechanism: a certified lower bound on the
// contribution of n in [n_lo, n_hi] to sum log(1+||T~^n 1_B||)/(1+n^2).
struct DivergenceBlock {
    size_t level;
    double eps;
    BigInt n_lo, n_hi;
    double increment;
    double slope;   // eps log q / q
    double kappa;   // log(2/W)/p
    double mass_W;  // certified mass of 1_B off S_{q,eps}
    std::string mechanism;  // "sublevel" (certified) or "profile" (computed sums)
    long spot_checks = 0, spot_failures = 0;
};

struct DivergenceReport {
    std::vector<DivergenceBlock> blocks;
    bool disjoint_ok = false;  // pairwise disjoint ranges, exact integer check
    bool sublevel_mechanism = false;
    std::string note;
};

// Certified per-block lower bounds when a level admits the sublevel window
// (windows split log-evenly when fewer usable levels exist than requested
// blocks); otherwise falls back to direct profile sums over convergent
// blocks (q_j, q_{j+1}].
DivergenceReport divergence_diagnostic(const AlphaContext& ctx, double p, int blocks,
                                       double eps = 0.004, const NormProfile* profile = nullptr);

struct FamilyFit {
    std::string family;
    double c = 0.0;
    long binding_n = 0;
    bool boundary_binding = false;
    bool flagged_entries = false;
};

struct CandidateVerdict {
    std::string candidate;
    bool beurling_ok = false;
    std::vector<FamilyFit> fits;
    bool passes = false;
    std::string reason;
};

struct AtzmonReport {
    std::vector<CandidateVerdict> candidates;
    bool obstruction = false;  // Theorem-4.1 regime flagged by the diagnostic
    std::string verdict;
    long range_N = 0;
};

// Beurling check + domination fit of all four norm families per candidate;
// "applicable (empirically, to range N)" when some candidate passes and no
// divergence obstruction is certified.
AtzmonReport atzmon_verdict(const NormProfile& prof, const std::vector<WeightSequence>& candidates,
                            const DivergenceReport* diag = nullptr);

}  // namespace bishoplab

#endif
