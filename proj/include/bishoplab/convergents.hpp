#ifndef BISHOPLAB_CONVERGENTS_HPP
#define BISHOPLAB_CONVERGENTS_HPP

#include <utility>
#include <vector>

#include "bishoplab/fixed_real.hpp"
#include "bishoplab/partial_quotients.hpp"
#include "bishoplab/util.hpp"

namespace bishoplab {

struct ConvergentRow {
    size_t j;
    BigInt p, q;
};

// Exact convergent table p_j/q_j, j = 0..depth, from the recurrence
// p_j = a_j p_{j-1} + p_{j-2}, q_j = a_j q_{j-1} + q_{j-2}.
class ConvergentTable {
public:
    explicit ConvergentTable(std::vector<ConvergentRow> rows) : rows_(std::move(rows)) {}
    size_t depth() const { return rows_.size() - 1; }
    const ConvergentRow& row(size_t j) const { return rows_.at(j); }
    const BigInt& p(size_t j) const { return rows_.at(j).p; }
    const BigInt& q(size_t j) const { return rows_.at(j).q; }
    // p_j q_{j-1} - p_{j-1} q_j == (-1)^(j-1), exact
    bool determinant_ok(size_t j) const;

private:
    std::vector<ConvergentRow> rows_;
};

ConvergentTable convergents(const PartialQuotients& pq, size_t depth);

// Exact rational enclosure of alpha from levels j, j+1 (endpoints ordered).
std::pair<BigRat, BigRat> alpha_enclosure(const ConvergentTable& t, size_t j);

// alpha to absolute error <= 2^-prec_bits via the alternating convergent
// enclosure, deepened until the interval is narrow enough.
FixedReal alpha_approx(const PartialQuotients& pq, long prec_bits);

struct GapCheck {
    bool pass;
    size_t j;
    BigRat dist_lo, dist_hi;    // certified enclosure of <q_j alpha>
    BigRat bound_lo, bound_hi;  // 1/(2Q) and 1/Q
};

// Verifies (2Q)^-1 < <q_j alpha> < Q^-1 with exact rational arithmetic.
// This is a theorem; failure indicates an implementation bug.
GapCheck check_convergent_gap(const PartialQuotients& pq, size_t j);
// Same, reusing a table of depth >= j+2.
GapCheck check_convergent_gap(const ConvergentTable& t, size_t j);

}  // namespace bishoplab

#endif
