#include "bishoplab/fixed_real.hpp"

#include <cmath>
#include <limits>

#include "bishoplab/errors.hpp"

namespace bishoplab {

uint64_t FixedReal::sat_add(uint64_t a, uint64_t b) {
    uint64_t s = a + b;
    return s < a ? std::numeric_limits<uint64_t>::max() : s;
}

uint64_t FixedReal::sat_mul(uint64_t a, uint64_t b) {
    if (a == 0 || b == 0) return 0;
    if (a > std::numeric_limits<uint64_t>::max() / b) return std::numeric_limits<uint64_t>::max();
    return a * b;
}

FixedReal FixedReal::from_int(long v, long prec_bits) {
    BigInt m(v);
    m <<= prec_bits;
    return FixedReal(m, prec_bits, 0);
}

FixedReal FixedReal::from_double(double v, long prec_bits) {
    // doubles are dyadic: v = mant53 * 2^(exp-53) exactly
    if (v == 0.0) return FixedReal(BigInt(0), prec_bits, 0);
    int exp;
    double m = std::frexp(v, &exp);
    auto mant53 = static_cast<long long>(std::ldexp(m, 53));
    BigInt big(static_cast<long>(mant53));
    long shift = prec_bits + exp - 53;
    uint64_t err = 0;
    if (shift >= 0) {
        big <<= shift;
    } else {
        mpz_fdiv_q_2exp(big.get_mpz_t(), big.get_mpz_t(), static_cast<mp_bitcnt_t>(-shift));
        err = 1;
    }
    return FixedReal(big, prec_bits, err);
}

FixedReal FixedReal::from_ratio(const BigInt& num, const BigInt& den, long prec_bits) {
    BigInt scaled = num;
    scaled <<= prec_bits;
    BigInt q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), scaled.get_mpz_t(), den.get_mpz_t());
    // round to nearest
    BigInt r2 = r * 2;
    if (mpz_cmpabs(r2.get_mpz_t(), den.get_mpz_t()) >= 0) q += 1;
    return FixedReal(q, prec_bits, 1);
}

FixedReal FixedReal::from_ratio(const BigRat& r, long prec_bits) {
    return from_ratio(BigInt(r.get_num()), BigInt(r.get_den()), prec_bits);
}

double FixedReal::to_double() const {
    mpf_class f(0, 128);
    mpf_set_z(f.get_mpf_t(), mant_.get_mpz_t());
    mpf_div_2exp(f.get_mpf_t(), f.get_mpf_t(), static_cast<mp_bitcnt_t>(prec_));
    return f.get_d();
}

BigRat FixedReal::to_rational() const {
    BigInt den(1);
    den <<= prec_;
    BigRat r(mant_, den);
    r.canonicalize();
    return r;
}

std::string FixedReal::str() const {
    return "FixedReal(" + mant_.get_str() + " * 2^-" + std::to_string(prec_) +
           " +- " + std::to_string(err_) + "ulp)";
}

FixedReal FixedReal::operator+(const FixedReal& o) const {
    if (prec_ == o.prec_)
        return FixedReal(mant_ + o.mant_, prec_, sat_add(sat_add(err_, o.err_), 1));
    FixedReal a = *this, b = o;
    long p = std::max(prec_, o.prec_);
    a = a.with_prec(p);
    b = b.with_prec(p);
    return a + b;
}

FixedReal FixedReal::operator-(const FixedReal& o) const { return *this + (-o); }

FixedReal FixedReal::operator-() const { return FixedReal(-mant_, prec_, err_); }

FixedReal FixedReal::mul_int(const BigInt& n) const {
    uint64_t an = mpz_fits_ulong_p(BigInt(abs(n)).get_mpz_t())
                      ? BigInt(abs(n)).get_ui()
                      : std::numeric_limits<uint64_t>::max();
    return FixedReal(mant_ * n, prec_, sat_add(sat_mul(an, err_), 1));
}

FixedReal FixedReal::mul_int(long n) const { return mul_int(BigInt(n)); }

FixedReal FixedReal::with_prec(long prec_bits) const {
    if (prec_bits == prec_) return *this;
    BigInt m = mant_;
    uint64_t e = err_;
    if (prec_bits > prec_) {
        m <<= (prec_bits - prec_);
        e = sat_mul(e, uint64_t(1) << std::min<long>(prec_bits - prec_, 62));
    } else {
        mpz_fdiv_q_2exp(m.get_mpz_t(), m.get_mpz_t(), static_cast<mp_bitcnt_t>(prec_ - prec_bits));
        long sh = prec_ - prec_bits;
        uint64_t scaled = sh >= 64 ? (e > 0 ? 1 : 0) : (e >> sh);
        e = sat_add(scaled, 1);
    }
    return FixedReal(m, prec_bits, e);
}

bool FixedReal::floor_is_certain() const {
    // floor changes only if the true value can cross an integer boundary:
    // distance from mantissa to the next multiple of 2^prec must exceed err
    BigInt r;
    mpz_fdiv_r_2exp(r.get_mpz_t(), mant_.get_mpz_t(), static_cast<mp_bitcnt_t>(prec_));
    BigInt up = (BigInt(1) << prec_) - r;
    BigInt e(static_cast<unsigned long>(err_));
    return r >= e && up > e;
}

BigInt FixedReal::floor_certified() const {
    if (!floor_is_certain())
        throw precision_error("floor uncertain at current precision: " + str());
    BigInt q;
    mpz_fdiv_q_2exp(q.get_mpz_t(), mant_.get_mpz_t(), static_cast<mp_bitcnt_t>(prec_));
    return q;
}

FracDist FixedReal::frac_dist() const {
    BigInt r;
    mpz_fdiv_r_2exp(r.get_mpz_t(), mant_.get_mpz_t(), static_cast<mp_bitcnt_t>(prec_));
    FixedReal frac(r, prec_, err_);
    BigInt half = BigInt(1) << (prec_ - 1);
    FixedReal dist = frac;
    if (r > half) dist = FixedReal((BigInt(1) << prec_) - r, prec_, err_);
    BigInt up = (BigInt(1) << prec_) - r;
    BigInt e(static_cast<unsigned long>(err_));
    bool uncertain = (r < e) || (up < e);
    return FracDist{frac, dist, uncertain};
}

Cmp FixedReal::compare(const FixedReal& o) const {
    if (prec_ != o.prec_) {
        long p = std::max(prec_, o.prec_);
        return with_prec(p).compare(o.with_prec(p));
    }
    BigInt diff = mant_ - o.mant_;
    BigInt tol(static_cast<unsigned long>(sat_add(err_, o.err_)));
    if (diff > tol) return Cmp::Greater;
    if (diff < -tol) return Cmp::Less;
    return Cmp::Uncertain;
}

Cmp FixedReal::compare_rational(const BigRat& r) const {
    // mant * den <=> num * 2^prec, with tolerance err * den
    BigInt lhs = mant_ * BigInt(r.get_den());
    BigInt rhs = BigInt(r.get_num()) << prec_;
    BigInt tol = BigInt(static_cast<unsigned long>(err_)) * BigInt(r.get_den());
    BigInt diff = lhs - rhs;
    if (diff > tol) return Cmp::Greater;
    if (diff < -tol) return Cmp::Less;
    return Cmp::Uncertain;
}

Cmp FixedReal::sign() const {
    BigInt tol(static_cast<unsigned long>(err_));
    if (mant_ > tol) return Cmp::Greater;
    if (mant_ < -tol) return Cmp::Less;
    return Cmp::Uncertain;
}

}  // namespace bishoplab
