#include "bishoplab/alpha_context.hpp"

#include <cmath>
#include <stdexcept>

#include "bishoplab/errors.hpp"
#include "bishoplab/registry.hpp"

namespace bishoplab {

AlphaContext::AlphaContext(PartialQuotients pq, size_t depth, long prec_bits, long rot_limit)
    : pq_(std::move(pq)),
      table_(convergents(pq_, std::min(depth, pq_.max_depth()))),
      alpha_(alpha_approx(pq_, prec_bits)),
      prec_(prec_bits),
      rot_limit_(rot_limit) {
    alpha_d_ = alpha_.to_double();
    rot_.resize(static_cast<size_t>(rot_limit));
    BigInt modulus = BigInt(1) << prec_;
    BigInt acc(0);
    const BigInt& m = alpha_.mantissa();
    for (long n = 1; n <= rot_limit; ++n) {
        acc += m;
        if (acc >= modulus) acc -= modulus;
        rot_[static_cast<size_t>(n - 1)] = std::ldexp(mpz_get_d(acc.get_mpz_t()), -int(prec_));
    }
    // n * (alpha ulp error) + double conversion
    rot_err_ = std::ldexp(double(rot_limit) * double(alpha_.err_ulp() + 1), -int(prec_)) + 0x1.0p-52;
}

AlphaContext AlphaContext::from_key(const std::string& key, size_t depth, long prec_bits,
                                    long rot_limit) {
    return AlphaContext(make_irrational(key), depth, prec_bits, rot_limit);
}

double AlphaContext::rot(long n) const {
    if (n == 0) return 0.0;
    if (n < 0) {
        double r = rot(-n);
        return r == 0.0 ? 0.0 : 1.0 - r;
    }
    if (n > rot_limit_)
        throw std::invalid_argument("rot(" + std::to_string(n) + ") beyond table limit " +
                                    std::to_string(rot_limit_));
    return rot_[static_cast<size_t>(n - 1)];
}

FixedReal AlphaContext::rot_exact(long n) const {
    FixedReal prod = alpha_.mul_int(n);
    return prod.frac_dist().frac;
}

Level AlphaContext::level(size_t j) const {
    if (j + 1 > table_.depth())
        throw std::invalid_argument("level " + std::to_string(j) + " beyond table depth");
    Level l;
    l.j = j;
    l.q = table_.q(j);
    l.Q = table_.q(j + 1);
    l.a = table_.p(j);
    l.qd = mpz_get_d(l.q.get_mpz_t());
    l.Qd = mpz_get_d(l.Q.get_mpz_t());
    l.log_q = log_big(l.q);
    l.log_Q = log_big(l.Q);
    return l;
}

long AlphaContext::find_level_with_q_at_most(const BigInt& bound) const {
    long best = -1;
    for (size_t j = 0; j + 1 <= table_.depth(); ++j) {
        if (table_.q(j) >= 2 && table_.q(j) <= bound) best = static_cast<long>(j);
    }
    return best;
}

}  // namespace bishoplab
