#include "bishoplab/partial_quotients.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "bishoplab/errors.hpp"

namespace bishoplab {

QuotientRule QuotientRule::constant(BigInt c) {
    if (c < 1) throw std::invalid_argument("constant rule needs c >= 1");
    QuotientRule r;
    r.kind = Kind::Constant;
    r.data = {std::move(c)};
    return r;
}

QuotientRule QuotientRule::periodic(std::vector<BigInt> period) {
    if (period.empty()) throw std::invalid_argument("periodic rule needs a nonempty period");
    for (const auto& c : period)
        if (c < 1) throw std::invalid_argument("periodic rule entries must be >= 1");
    QuotientRule r;
    r.kind = Kind::Periodic;
    r.data = std::move(period);
    return r;
}

QuotientRule QuotientRule::arithmetic(BigInt c0, BigInt c1) {
    QuotientRule r;
    r.kind = Kind::Arithmetic;
    r.data = {std::move(c0), std::move(c1)};
    return r;
}

QuotientRule QuotientRule::e_pattern() {
    QuotientRule r;
    r.kind = Kind::EPattern;
    return r;
}

BigInt QuotientRule::eval(size_t j, size_t prefix_len) const {
    switch (kind) {
        case Kind::Constant:
            return data[0];
        case Kind::Periodic:
            return data[(j - prefix_len - 1) % data.size()];
        case Kind::Arithmetic: {
            BigInt v = data[0] + data[1] * BigInt(static_cast<unsigned long>(j));
            if (v < 1) throw std::invalid_argument("arithmetic rule produced a_j < 1 at j=" +
                                                   std::to_string(j));
            return v;
        }
        case Kind::EPattern:
            // [0; 1, 2, 1, 1, 4, 1, 1, 6, ...]: a_j = 2(j/3)+2 when j % 3 == 2
            if (j % 3 == 2) return BigInt(static_cast<unsigned long>(2 * (j / 3) + 2));
            return BigInt(1);
        case Kind::None:
            break;
    }
    throw generator_exhausted("no continuation rule");
}

std::string QuotientRule::str() const {
    switch (kind) {
        case Kind::None: return "none";
        case Kind::Constant: return "constant:" + data[0].get_str();
        case Kind::Periodic: {
            std::string s = "periodic:";
            for (size_t i = 0; i < data.size(); ++i) s += (i ? "," : "") + data[i].get_str();
            return s;
        }
        case Kind::Arithmetic: return "arithmetic:" + data[0].get_str() + "+" + data[1].get_str() + "j";
        case Kind::EPattern: return "e-pattern";
    }
    return "?";
}

PartialQuotients::PartialQuotients(std::vector<BigInt> prefix, QuotientRule rule, std::string label,
                                   size_t faithful_depth)
    : prefix_(std::move(prefix)),
      rule_(std::move(rule)),
      label_(std::move(label)),
      faithful_(faithful_depth) {
    for (size_t i = 0; i < prefix_.size(); ++i)
        if (prefix_[i] < 1)
            throw std::invalid_argument("partial quotient a_" + std::to_string(i + 1) +
                                        " must be >= 1 (" + label_ + ")");
    if (prefix_.empty() && !rule_.present())
        throw std::invalid_argument("empty prefix with no rule (" + label_ + ")");
}

BigInt PartialQuotients::a(size_t j) const {
    if (j == 0) return BigInt(0);
    if (j <= prefix_.size()) return prefix_[j - 1];
    if (!rule_.present())
        throw generator_exhausted("prefix of '" + label_ + "' has " +
                                  std::to_string(prefix_.size()) + " quotients, a_" +
                                  std::to_string(j) + " requested and no rule attached");
    return rule_.eval(j, prefix_.size());
}

size_t PartialQuotients::max_depth() const {
    return rule_.present() ? std::numeric_limits<size_t>::max() : prefix_.size();
}

size_t PartialQuotients::faithful_depth() const { return std::min(faithful_, max_depth()); }

}  // namespace bishoplab
