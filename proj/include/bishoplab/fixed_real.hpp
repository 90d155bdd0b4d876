#ifndef BISHOPLAB_FIXED_REAL_HPP
#define BISHOPLAB_FIXED_REAL_HPP

#include <cstdint>
#include <string>

#include "bishoplab/util.hpp"

namespace bishoplab {

enum class Cmp { Less, Greater, Uncertain };

struct FracDist;  // defined after FixedReal

// Fixed-point real: value = mantissa * 2^-prec_bits, with an explicit bound
// err_ulp on the accumulated absolute error in units of 2^-prec_bits.
// Fractional parts of q_j*alpha demand absolute (not relative) error
// control, which is why this is fixed-point and not floating.
//
// Comparisons whose outcome lies within the combined error of a tie report
// Cmp::Uncertain instead of guessing.
class FixedReal {
public:
    FixedReal() : mant_(0), prec_(64), err_(0) {}
    FixedReal(BigInt mantissa, long prec_bits, uint64_t err_ulp)
        : mant_(std::move(mantissa)), prec_(prec_bits), err_(err_ulp) {}

    // exact embeddings
    static FixedReal from_int(long v, long prec_bits);
    static FixedReal from_double(double v, long prec_bits);
    // rounded to nearest ulp, err_ulp = 1
    static FixedReal from_ratio(const BigInt& num, const BigInt& den, long prec_bits);
    static FixedReal from_ratio(const BigRat& r, long prec_bits);

    const BigInt& mantissa() const { return mant_; }
    long prec_bits() const { return prec_; }
    uint64_t err_ulp() const { return err_; }

    double to_double() const;
    BigRat to_rational() const;  // center value, ignores err
    std::string str() const;

    FixedReal operator+(const FixedReal& o) const;
    FixedReal operator-(const FixedReal& o) const;
    FixedReal operator-() const;
    FixedReal mul_int(const BigInt& n) const;
    FixedReal mul_int(long n) const;

    // rescale to a different precision (rounds, adds <= 1 ulp)
    FixedReal with_prec(long prec_bits) const;

    // floor certified against err; throws precision_error when the integer
    // part cannot be pinned down
    BigInt floor_certified() const;
    bool floor_is_certain() const;

    // fractional part in [0,1) and distance to the nearest integer;
    // uncertain = true when the value sits within err of an integer
    FracDist frac_dist() const;

    Cmp compare(const FixedReal& o) const;
    Cmp compare_rational(const BigRat& r) const;
    Cmp sign() const;  // vs zero

private:
    BigInt mant_;
    long prec_;
    uint64_t err_;

    static uint64_t sat_add(uint64_t a, uint64_t b);
    static uint64_t sat_mul(uint64_t a, uint64_t b);
};

struct FracDist {
    FixedReal frac;
    FixedReal dist;
    bool uncertain;
};

}  // namespace bishoplab

#endif
