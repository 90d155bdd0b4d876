#include "bishoplab/growth.hpp"

#include <cmath>
#include <stdexcept>

#include "bishoplab/errors.hpp"

namespace bishoplab {

GrowthRule GrowthRule::zero() { return GrowthRule{Kind::Zero, 0.0, 0.0}; }

GrowthRule GrowthRule::power(double coeff, double exponent) {
    if (coeff < 0 || exponent < 0) throw std::invalid_argument("growth power rule needs c,e >= 0");
    return GrowthRule{Kind::Power, coeff, exponent};
}

GrowthRule GrowthRule::qlog2() { return GrowthRule{Kind::QLog2, 1.0, 1.0}; }

double GrowthRule::eval(const BigInt& q) const {
    switch (kind) {
        case Kind::Zero: return 0.0;
        case Kind::Power: return coeff * std::exp(exponent * log_big(q));
        case Kind::QLog2: return mpz_get_d(q.get_mpz_t()) * M_LN2;
    }
    return 0.0;
}

std::string GrowthRule::str() const {
    switch (kind) {
        case Kind::Zero: return "zero";
        case Kind::QLog2: return "qlog2";
        case Kind::Power: {
            char buf[64];
            std::snprintf(buf, sizeof buf, "pow:%g*q^%g", coeff, exponent);
            return buf;
        }
    }
    return "?";
}

namespace {

// round(exp(x)) for x >= 0 as an exact power-of-two shift of a 53-bit
// mantissa; relative error ~1e-11 which the O(1) contract absorbs
BigInt exp_to_int(double x) {
    if (x < 0) throw std::invalid_argument("exp_to_int: x >= 0 required");
    double lg = x / M_LN2;
    long m = static_cast<long>(std::floor(lg));
    double f = lg - static_cast<double>(m);
    auto mant = static_cast<long long>(std::llround(std::ldexp(std::exp2(f), 52)));
    BigInt r(static_cast<long>(mant));
    long shift = m - 52;
    if (shift >= 0)
        r <<= shift;
    else
        mpz_fdiv_q_2exp(r.get_mpz_t(), r.get_mpz_t(), static_cast<mp_bitcnt_t>(-shift));
    if (r < 1) r = 1;
    return r;
}

}  // namespace

GrowthResult construct_with_growth(const GrowthRule& g, size_t depth, const BigInt& a1,
                                   long max_bits_budget) {
    if (depth < 1) throw std::invalid_argument("construct_with_growth: depth >= 1");
    if (a1 < 1) throw std::invalid_argument("construct_with_growth: a1 >= 1");
    std::vector<BigInt> prefix{a1};
    std::vector<double> targets, achieved;
    BigInt q_prev(1), q_cur(a1);  // q_0 = 1, q_1 = a_1
    for (size_t j = 1; j < depth; ++j) {
        double gval = g.eval(q_cur);
        double bits_needed = gval / M_LN2;
        if (bits_needed > static_cast<double>(max_bits_budget))
            throw budget_error("growth level " + std::to_string(j + 1) + " needs ~" +
                               std::to_string(static_cast<long long>(bits_needed)) +
                               " bits > budget " + std::to_string(max_bits_budget));
        BigInt e = exp_to_int(gval);
        BigInt a = (e + q_cur / 2) / q_cur;
        if (a < 1) a = 1;
        prefix.push_back(a);
        BigInt q_next = a * q_cur + q_prev;
        targets.push_back(gval);
        achieved.push_back(log_big(q_next));
        q_prev = q_cur;
        q_cur = q_next;
    }
    PartialQuotients pq(std::move(prefix), QuotientRule::none(),
                        "growth:" + g.str() + "@" + a1.get_str());
    return GrowthResult{std::move(pq), std::move(targets), std::move(achieved)};
}

size_t growth_feasible_depth(const GrowthRule& g, const BigInt& a1, size_t cap,
                             long max_bits_budget) {
    size_t lo = 1;
    for (size_t d = 2; d <= cap; ++d) {
        try {
            construct_with_growth(g, d, a1, max_bits_budget);
            lo = d;
        } catch (const budget_error&) {
            break;
        }
    }
    return lo;
}

}  // namespace bishoplab
