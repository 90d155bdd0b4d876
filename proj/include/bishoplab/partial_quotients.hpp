#ifndef BISHOPLAB_PARTIAL_QUOTIENTS_HPP
#define BISHOPLAB_PARTIAL_QUOTIENTS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "bishoplab/util.hpp"

namespace bishoplab {

// Continuation rule producing a_j beyond an explicit prefix.  Deterministic:
// the same j always yields the same a_j.
struct QuotientRule {
    enum class Kind { None, Constant, Periodic, Arithmetic, EPattern };
    Kind kind = Kind::None;
    std::vector<BigInt> data;  // Constant: {c}; Periodic: the period;
                               // Arithmetic: {c0, c1} meaning a_j = c0 + c1*j

    static QuotientRule none() { return {}; }
    static QuotientRule constant(BigInt c);
    static QuotientRule periodic(std::vector<BigInt> period);
    static QuotientRule arithmetic(BigInt c0, BigInt c1);
    static QuotientRule e_pattern();  // 1,2,1,1,4,1,1,6,... (the expansion of e-2)

    bool present() const { return kind != Kind::None; }
    // a_j for j >= prefix_len + 1 (1-based partial quotient index)
    BigInt eval(size_t j, size_t prefix_len) const;
    std::string str() const;
};

// An irrational alpha in (0,1) defined by its continued fraction
// [0; a_1, a_2, ...]: a_0 = 0 fixed, a_j >= 1 for j >= 1.
//
// faithful_depth marks how far the quotients follow the defining
// construction; growth-targeted irrationals whose pure continuation would
// exceed the big-integer budget carry a constant-1 precision padding beyond
// it.  Classification stops at the faithful part.
class PartialQuotients {
public:
    PartialQuotients(std::vector<BigInt> prefix, QuotientRule rule, std::string label,
                     size_t faithful_depth = SIZE_MAX);

    // a(0) == 0; a(j) for j >= 1 from prefix or rule.
    // Throws generator_exhausted past the prefix when no rule is attached.
    BigInt a(size_t j) const;

    size_t prefix_len() const { return prefix_.size(); }
    bool has_rule() const { return rule_.present(); }
    const QuotientRule& rule() const { return rule_; }
    const std::string& label() const { return label_; }
    // largest depth addressable (prefix length when no rule, unbounded otherwise)
    size_t max_depth() const;
    size_t faithful_depth() const;

private:
    std::vector<BigInt> prefix_;  // a_1, a_2, ... (a_0 = 0 implicit)
    QuotientRule rule_;
    std::string label_;
    size_t faithful_;
};

}  // namespace bishoplab

#endif
