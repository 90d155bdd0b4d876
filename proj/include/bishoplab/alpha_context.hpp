#ifndef BISHOPLAB_ALPHA_CONTEXT_HPP
#define BISHOPLAB_ALPHA_CONTEXT_HPP

#include <string>
#include <vector>

#include "bishoplab/convergents.hpp"
#include "bishoplab/fixed_real.hpp"
#include "bishoplab/partial_quotients.hpp"

namespace bishoplab {

// One convergent level: q = q_j, Q = q_{j+1}, a = p_j.
struct Level {
    size_t j;
    BigInt q, Q, a;
    double qd, Qd;
    double log_q, log_Q;
};

// Immutable bundle of an irrational with its convergent table, a fixed-point
// approximation, and a precomputed rotation table frac(n*alpha).
//
// frac(n*alpha) comes from exact integer accumulation of the mantissa mod
// 2^prec -- never from repeated floating addition, whose error would grow
// linearly in n.
class AlphaContext {
public:
    AlphaContext(PartialQuotients pq, size_t depth, long prec_bits, long rot_limit);

    static AlphaContext from_key(const std::string& key, size_t depth = 40,
                                 long prec_bits = 192, long rot_limit = 1 << 13);

    const PartialQuotients& pq() const { return pq_; }
    const ConvergentTable& table() const { return table_; }
    const std::string& key() const { return pq_.label(); }
    size_t depth() const { return table_.depth(); }
    long prec_bits() const { return prec_; }
    long rot_limit() const { return rot_limit_; }

    const FixedReal& alpha_fixed() const { return alpha_; }
    double alpha() const { return alpha_d_; }

    // frac(n*alpha) for 0 < |n| <= rot_limit; frac(-n a) = 1 - frac(n a)
    double rot(long n) const;
    // absolute error bound on any rot() entry
    double rot_err() const { return rot_err_; }
    // certified frac(n*alpha) at full precision, any n
    FixedReal rot_exact(long n) const;

    // levels j = 0 .. depth-1 pair (q_j, q_{j+1})
    size_t level_count() const { return table_.depth(); }
    Level level(size_t j) const;
    // deepest level with q_j <= bound (-1 if none with q_j >= 2)
    long find_level_with_q_at_most(const BigInt& bound) const;

private:
    PartialQuotients pq_;
    ConvergentTable table_;
    FixedReal alpha_;
    double alpha_d_;
    long prec_;
    long rot_limit_;
    std::vector<double> rot_;  // rot_[n-1] = frac(n*alpha), n = 1..rot_limit
    double rot_err_;
};

}  // namespace bishoplab

#endif
