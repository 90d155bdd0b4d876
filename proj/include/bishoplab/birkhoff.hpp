#ifndef BISHOPLAB_BIRKHOFF_HPP
#define BISHOPLAB_BIRKHOFF_HPP

#include <string>
#include <vector>

#include "bishoplab/alpha_context.hpp"

namespace bishoplab {

// L_n(t) = s * sum_{j<n} (1 + log{t + j alpha}) with a certified error bound.
struct SumResult {
    double value = 0.0;
    enum class Method { Naive, Blockwise, Fast } method = Method::Naive;
    double err_bound = 0.0;
    long n = 0;
    double t = 0.0;
    double s = 1.0;
};

// Compensated direct summation; throws precision_error when the orbit hits
// zero within certified precision.
SumResult L_naive(const AlphaContext& ctx, double t, long n, double s = 1.0);

// Level data (q, Q, a, delta, delta_l) with alpha = a/q + delta/(qQ),
// 1/2 < |delta| < 1 certified from the exact rational enclosure, and
// delta_l = j_l delta / q where l -> j_l inverts j -> a*j (mod q).
struct BlockDecomposition {
    size_t level;
    BigInt q, Q, a;
    double qd, Qd;
    double delta;
    double delta_err;
    std::vector<long> j_l;
    std::vector<double> delta_l;
};

BlockDecomposition block_decompose(const AlphaContext& ctx, size_t j);

// L_q(t + k q alpha) through the block formula
// sum_l (1 + log{t + l/q + (k delta + delta_l)/Q}).
SumResult L_block(const AlphaContext& ctx, const BlockDecomposition& dec, double t, long k);

// L(x) = sum_{l<q} (1 + log((x+l)/q)) = q + lgamma(x+q) - lgamma(x) - q log q.
// Increasing on (0,1) with slope >= log q for q >= 2.
double L_cal(double x, double q);
double L_cal_direct(double x, long q);  // plain summation, oracle use

struct FastWindow {
    double n_lo, n_hi;
    bool nonempty;
};
FastWindow l_fast_window(const AlphaContext& ctx, size_t j, double eps);

// O(q) certified estimate (n'/q) L({qt}) valid for <qt> > 2 eps and
// n in [eps^-2 q^2 log q, eps^2 Q/q]; refuses anything else.
SumResult L_fast(const AlphaContext& ctx, size_t j, double t, long n, double eps);

// Bracket shapes of the Davie-type estimates, without the absolute constant:
// upper = r + (n/q) log(q+1); lower = -(r' + ((n+q)/q) log(mu^-1 + q)).
struct DavieBracket {
    double upper, lower;
    long r, r_prime;
};
DavieBracket davie_bracket(const AlphaContext& ctx, size_t j, long n, double mu);

struct ConstantFit {
    double c_upper = 0.0, c_lower = 0.0;
    long argmax_n_upper = 0, argmax_n_lower = 0;
    double argmax_t_upper = 0.0, argmax_t_lower = 0.0;
    long samples_used = 0;
    long shifted_min_flags = 0;  // lower-branch minima attained at shifted indices
};

// Fits the absolute constants over t samples in B_alpha (verified up to
// truncation n_max) and n in [1, n_max].  adjoint_branch selects
// mu^-1 = 20(n+q)^2 instead of 20 n^2.
ConstantFit fit_constant(const AlphaContext& ctx, size_t j, const std::vector<double>& t_samples,
                         long n_max, bool adjoint_branch);

struct PropBound {
    double value;
    bool hypotheses_ok;
    double N_closest;
};
// q + (|n-N|/q) log(q+1) + ((n+Q)/Q) log(n+1), N the closest multiple of Q;
// hypotheses: Q >= 4 (10q)^4 and 1 <= n <= Q^(3/2).
PropBound prop_bound(const AlphaContext& ctx, size_t j, long n);

struct WindowLemmaReport {
    long small_checked = 0, small_violations = 0;
    long large_checked = 0, large_violations = 0;
    double c_small = 0.0, c_large = 0.0;  // calibration constants
    bool hypotheses_empty = false;
    std::string note;
};
// Samples the hypotheses of the two window lemmas at level j and verifies
// zero violations against constants fitted on a disjoint calibration set.
WindowLemmaReport verify_window_lemmas(const AlphaContext& ctx, size_t j, int samples,
                                       uint64_t seed, long large_diff_cap = 100000);

}  // namespace bishoplab

#endif
