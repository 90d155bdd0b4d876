#ifndef BISHOPLAB_GROWTH_HPP
#define BISHOPLAB_GROWTH_HPP

#include <string>
#include <vector>

#include "bishoplab/partial_quotients.hpp"
#include "bishoplab/util.hpp"

namespace bishoplab {

// Growth target g for denominators: the constructor aims at
// log q_{j+1} = g(q_j) + O(1) by taking a_{j+1} = max(1, round(exp(g(q_j))/q_j)).
struct GrowthRule {
    enum class Kind { Zero, Power, QLog2 };
    Kind kind = Kind::Zero;
    double coeff = 1.0;
    double exponent = 1.0;  // g(q) = coeff * q^exponent for Power

    static GrowthRule zero();
    static GrowthRule power(double coeff, double exponent);
    static GrowthRule qlog2();  // g(q) = q log 2, i.e. q_{j+1} ~ 2^q

    // g(q) in natural-log units; monotone in q by construction
    double eval(const BigInt& q) const;
    std::string str() const;
};

struct GrowthResult {
    PartialQuotients pq;
    std::vector<double> target_log;    // g(q_j) per constructed level
    std::vector<double> achieved_log;  // log q_{j+1} actually reached
};

// Builds [0; a_1, ..., a_depth] hitting the growth target from level a_1 on.
// Throws budget_error when a requested level would need integers beyond
// max_bits_budget bits.
GrowthResult construct_with_growth(const GrowthRule& g, size_t depth, const BigInt& a1,
                                   long max_bits_budget = 1l << 20);

// Deepest depth constructible under the budget (at most `cap`).
size_t growth_feasible_depth(const GrowthRule& g, const BigInt& a1, size_t cap,
                             long max_bits_budget = 1l << 20);

}  // namespace bishoplab

#endif
