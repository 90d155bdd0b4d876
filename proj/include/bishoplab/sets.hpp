#ifndef BISHOPLAB_SETS_HPP
#define BISHOPLAB_SETS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "bishoplab/alpha_context.hpp"

namespace bishoplab {

// Truncated membership in B_alpha = { 1/20 < t < 19/20 : <t - n alpha> >
// 1/(20 n^2) for all n in Z* }.  Full membership is an infinite conjunction;
// every consumer receives the truncation N and must propagate it.
struct TruncatedMembership {
    bool member_up_to_N = false;
    long truncation = 0;
    long failing_n = 0;       // signed witness; 0 = boundary or none
    double min_margin = 0.0;  // min over tested n of <t-n a> * 20 n^2 - 1
    bool uncertain = false;
};

TruncatedMembership in_B_alpha(const AlphaContext& ctx, double t, long N);

struct MeasureEstimate {
    double estimate = 0.0;
    double mc_err = 0.0;        // one-sigma binomial bound
    double tail_deficit = 0.0;  // 2 sum_{|n|>N} (20 n^2)^-1 <= 1/(5N)
    long samples = 0;
    uint64_t seed = 0;
    long uncertain = 0;
};

// Seeded stratified Monte Carlo over [1/20, 19/20].
MeasureEstimate measure_B_alpha(const AlphaContext& ctx, long N, long samples, uint64_t seed);

struct SMembership {
    bool in_S = false;
    bool uncertain = false;
};
// S_{q,eps} = {<qt> <= 2 eps} union {|L({qt})| <= 8 eps log q}, q from level j.
SMembership in_S_q_eps(const AlphaContext& ctx, size_t j, double eps, double t);

// Analytic description of S_{q,eps}: the sublevel set of the increasing
// function L is an interval [x_lo, x_hi] located by bisection.
struct SublevelSet {
    double x_lo = 0.0, x_hi = 0.0;    // |L| <= 8 eps log q on [x_lo, x_hi]
    double measure_strips = 0.0;      // <qt> <= 2 eps part
    double measure_sublevel = 0.0;
    double measure_total = 0.0;       // union, exact interval arithmetic
};
SublevelSet sublevel_set(const AlphaContext& ctx, size_t j, double eps);

struct SublevelCheckReport {
    long pairs = 0, violations = 0;
    double min_gap = 0.0;  // min over pairs of min(|L|,|L'|) - eps (n/q) log q
    double measured_S = 0.0, mc_err = 0.0;
    bool window_empty = false;
    double required_Q = 0.0;  // when empty: least Q making the window viable
    std::string note;
};

// Samples (t not in S_{q,eps}, n in the certified window) and verifies
// min(|L_n(t - n alpha)|, |L_n(t)|) > eps (n/q) log q with the naive oracle.
SublevelCheckReport sublevel_lemma_check(const AlphaContext& ctx, size_t j, double eps,
                                         long pair_count, uint64_t seed, long n_cap = 100000);

// MC coverage curve of union_{|j| <= k} tau^(-j)(B_alpha), k = 0..N_orbit.
std::vector<double> ergodic_coverage(const AlphaContext& ctx, long N_set, int N_orbit,
                                     long samples, uint64_t seed);

class ContentCache;

// Truncated membership evaluated on the midpoint grid, one byte per point.
std::vector<uint8_t> grid_membership(const AlphaContext& ctx, int log2G, long N_trunc);

// Same, backed by a membership cache file keyed by (alpha key, grid, N).
// Binary layout (versioned): "BLMB" u32 version, u64 G, u64 N, payload bytes.
std::vector<uint8_t> grid_membership_cached(const AlphaContext& ctx, int log2G, long N_trunc,
                                            const ContentCache& cache);

}  // namespace bishoplab

#endif
