#ifndef BISHOPLAB_UTIL_HPP
#define BISHOPLAB_UTIL_HPP

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace bishoplab {

using BigInt = mpz_class;
using BigRat = mpq_class;

// log of a positive big integer through mantissa/exponent splitting.
// Relative error ~ 1e-15 even for million-bit operands.
inline double log_big(const BigInt& x) {
    long e = 0;
    double d = mpz_get_d_2exp(&e, x.get_mpz_t());
    return std::log(d) + static_cast<double>(e) * M_LN2;
}

inline double log_rat(const BigRat& x) {
    return log_big(BigInt(x.get_num())) - log_big(BigInt(x.get_den()));
}

// Neumaier variant of Kahan summation.  `add` keeps a running compensation
// term so that sums mixing magnitudes (e.g. log-terms near a small
// fractional part) lose at most one ulp of the final total.
struct KahanSum {
    double sum = 0.0;
    double comp = 0.0;
    void add(double x) {
        double t = sum + x;
        if (std::fabs(sum) >= std::fabs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

// Deterministic RNG: xoshiro-free, plain SplitMix64 stream.  Portable and
// stable across platforms/compilers, unlike std distributions.
struct Rng {
    uint64_t state;
    explicit Rng(uint64_t seed) : state(seed) {}
    uint64_t next_u64() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    // uniform in [0,1) with 53 random bits
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
    // uniform in [lo,hi)
    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }
    // derive an independent stream for a named sub-task
    Rng fork(uint64_t salt) const {
        Rng r(state ^ (0x6a09e667f3bcc909ULL * (salt + 1)));
        r.next_u64();
        return r;
    }
};

// FNV-1a 64-bit, used for content-addressed cache keys and blob checksums.
inline uint64_t fnv1a(const void* data, size_t len, uint64_t h = 0xcbf29ce484222325ULL) {
    const unsigned char* p = static_cast<const unsigned char*>(data);
    for (size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}
inline uint64_t fnv1a(const std::string& s) { return fnv1a(s.data(), s.size()); }

// Pinned float formatting for reports: shortest round-trip is compiler
// dependent, %.17g is not.
inline std::string fmt_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline double frac01(double x) {
    double f = x - std::floor(x);
    if (f >= 1.0) f = 0.0;  // guards the x = -tiny case where floor rounds up
    return f;
}

// distance to the nearest integer
inline double dist_to_int(double x) {
    double f = frac01(x);
    return std::min(f, 1.0 - f);
}

// log(1 + e^x) without overflow
inline double log1p_exp(double x) {
    if (x > 0) return x + std::log1p(std::exp(-x));
    return std::log1p(std::exp(x));
}

void atomic_write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace bishoplab

#endif
