#include "bishoplab/sets.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>

#include "bishoplab/birkhoff.hpp"
#include "bishoplab/cache.hpp"
#include "bishoplab/errors.hpp"

namespace bishoplab {

namespace {

// Exact recheck of <t - n alpha> vs 1/(20 n^2) when the double-precision
// margin cannot call it.  t is a dyadic double, so the only approximation
// left is alpha itself.
Cmp exact_orbit_compare(const AlphaContext& ctx, double t, long n) {
    FixedReal tf = FixedReal::from_double(t, ctx.prec_bits());
    FixedReal shifted = tf - ctx.alpha_fixed().mul_int(n);
    auto fd = shifted.frac_dist();
    BigRat threshold(BigInt(1), BigInt(20) * BigInt(n) * BigInt(n));
    threshold.canonicalize();
    return fd.dist.compare_rational(threshold);
}

}  // namespace

TruncatedMembership in_B_alpha(const AlphaContext& ctx, double t, long N) {
    if (N < 1) throw std::invalid_argument("in_B_alpha: N >= 1");
    if (N > ctx.rot_limit())
        throw std::invalid_argument("in_B_alpha: truncation exceeds rotation table");
    TruncatedMembership m;
    m.truncation = N;
    m.min_margin = 1e300;
    if (!(t > 0.05 && t < 0.95)) {
        m.member_up_to_N = false;
        m.failing_n = 0;
        m.min_margin = 0.0;
        return m;
    }
    const double tie_tol = 4.0 * ctx.rot_err() + 0x1.0p-48;
    for (long n = 1; n <= N; ++n) {
        double r = ctx.rot(n);
        double inv_thr = 20.0 * double(n) * double(n);
        // d1 = <t - n alpha>, d2 = <t + n alpha>
        double f1 = t - r;
        if (f1 < 0) f1 += 1.0;
        double d1 = std::min(f1, 1.0 - f1);
        double f2 = t + r;
        if (f2 >= 1.0) f2 -= 1.0;
        double d2 = std::min(f2, 1.0 - f2);
        for (int sgn_case = 0; sgn_case < 2; ++sgn_case) {
            double d = sgn_case == 0 ? d1 : d2;
            long witness = sgn_case == 0 ? n : -n;
            double margin = d * inv_thr - 1.0;
            m.min_margin = std::min(m.min_margin, margin);
            if (std::fabs(d - 1.0 / inv_thr) <= tie_tol) {
                Cmp c = exact_orbit_compare(ctx, t, witness);
                if (c == Cmp::Uncertain) {
                    m.uncertain = true;
                } else if (c == Cmp::Less) {
                    m.member_up_to_N = false;
                    m.failing_n = witness;
                    return m;
                }
            } else if (margin < 0) {
                m.member_up_to_N = false;
                m.failing_n = witness;
                return m;
            }
        }
    }
    m.member_up_to_N = true;
    return m;
}

MeasureEstimate measure_B_alpha(const AlphaContext& ctx, long N, long samples, uint64_t seed) {
    if (samples < 1000) throw std::invalid_argument("measure_B_alpha: samples >= 1000");
    MeasureEstimate est;
    est.samples = samples;
    est.seed = seed;
    Rng rng(seed);
    const double lo = 0.05, hi = 0.95, width = hi - lo;
    long hits = 0;
    for (long i = 0; i < samples; ++i) {
        // stratified: one uniform point per stratum, fixed-order reduction
        double u = (double(i) + rng.next_double()) / double(samples);
        double t = lo + width * u;
        TruncatedMembership m = in_B_alpha(ctx, t, N);
        if (m.uncertain) ++est.uncertain;
        if (m.member_up_to_N) ++hits;
    }
    double p = double(hits) / double(samples);
    est.estimate = width * p;
    est.mc_err = width * std::sqrt(std::max(p * (1 - p), 1.0 / double(samples)) / double(samples));
    est.tail_deficit = 1.0 / (5.0 * double(N));
    return est;
}

SMembership in_S_q_eps(const AlphaContext& ctx, size_t j, double eps, double t) {
    if (!(eps > 0 && eps < 0.25)) throw std::invalid_argument("in_S_q_eps: eps in (0,1/4)");
    Level lv = ctx.level(j);
    if (lv.q < 2) throw std::invalid_argument("in_S_q_eps: q >= 2 required");
    SMembership r;
    double qt = lv.qd * t;
    double dist = dist_to_int(qt);
    double band = 2 * eps;
    const double tol = 1e-12 * (lv.qd + 1.0);
    if (dist <= band + tol) {
        r.in_S = true;
        r.uncertain = std::fabs(dist - band) <= tol;
        return r;
    }
    double x = frac01(qt);
    double lval = L_cal(x, lv.qd);
    double cut = 8.0 * eps * lv.log_q;
    r.in_S = std::fabs(lval) <= cut + 1e-9;
    r.uncertain = std::fabs(std::fabs(lval) - cut) <= 1e-9;
    return r;
}

SublevelSet sublevel_set(const AlphaContext& ctx, size_t j, double eps) {
    Level lv = ctx.level(j);
    if (lv.q < 2) throw std::invalid_argument("sublevel_set: q >= 2 required");
    double cut = 8.0 * eps * lv.log_q;
    auto bisect = [&](double target) {
        double a = 1e-300, b = 1.0 - 1e-16;
        if (L_cal(b, lv.qd) < target) return 1.0;
        if (L_cal(a, lv.qd) > target) return 0.0;
        for (int it = 0; it < 200; ++it) {
            double mid = 0.5 * (a + b);
            (L_cal(mid, lv.qd) < target ? a : b) = mid;
        }
        return 0.5 * (a + b);
    };
    SublevelSet s;
    s.x_lo = bisect(-cut);
    s.x_hi = bisect(cut);
    s.measure_sublevel = std::max(0.0, s.x_hi - s.x_lo);
    s.measure_strips = std::min(1.0, 4.0 * eps);
    // union of [0,2eps] u [1-2eps,1) and [x_lo, x_hi] in x-space
    double a0 = 2 * eps, b0 = 1 - 2 * eps;  // complement of the strips
    double il = std::max(s.x_lo, a0), ih = std::min(s.x_hi, b0);
    s.measure_total = s.measure_strips + std::max(0.0, ih - il);
    return s;
}

SublevelCheckReport sublevel_lemma_check(const AlphaContext& ctx, size_t j, double eps,
                                         long pair_count, uint64_t seed, long n_cap) {
    Level lv = ctx.level(j);
    SublevelCheckReport rep;
    rep.min_gap = 1e300;
    FastWindow w = l_fast_window(ctx, j, eps);
    if (!w.nonempty) {
        rep.window_empty = true;
        rep.required_Q = std::pow(eps, -4.0) * lv.qd * lv.qd * lv.qd * std::max(lv.log_q, 1e-9);
        rep.note = "window empty: requires Q > eps^-4 q^3 log q";
        return rep;
    }
    double n_lo = w.n_lo;
    double n_hi = std::min(w.n_hi, double(n_cap));
    if (n_lo > n_hi) {
        rep.window_empty = true;
        rep.note = "window beyond the naive-oracle cap";
        return rep;
    }
    Rng rng(seed);
    for (long i = 0; i < pair_count; ++i) {
        double t;
        for (;;) {
            t = rng.next_double();
            SMembership s = in_S_q_eps(ctx, j, eps, t);
            if (!s.in_S && !s.uncertain) break;
        }
        double u = rng.next_double();
        long n = static_cast<long>(std::exp(std::log(n_lo) + u * (std::log(n_hi) - std::log(n_lo))));
        n = std::max<long>(static_cast<long>(n_lo), std::min<long>(n, static_cast<long>(n_hi)));
        double L1 = L_naive(ctx, t, n).value;
        double t_shift = frac01(t - ctx.rot(n));
        double L2 = L_naive(ctx, t_shift, n).value;
        double bound = eps * double(n) / lv.qd * lv.log_q;
        double gap = std::min(std::fabs(L1), std::fabs(L2)) - bound;
        rep.min_gap = std::min(rep.min_gap, gap);
        ++rep.pairs;
        if (gap <= 0) ++rep.violations;
    }
    // measured S mass, seeded
    Rng rng2 = rng.fork(0x5e7);
    long s_hits = 0;
    const long s_samples = 100000;
    for (long i = 0; i < s_samples; ++i) {
        double t = (double(i) + rng2.next_double()) / double(s_samples);
        if (in_S_q_eps(ctx, j, eps, t).in_S) ++s_hits;
    }
    double p = double(s_hits) / double(s_samples);
    rep.measured_S = p;
    rep.mc_err = std::sqrt(std::max(p * (1 - p), 1.0 / double(s_samples)) / double(s_samples));
    return rep;
}

std::vector<uint8_t> grid_membership(const AlphaContext& ctx, int log2G, long N_trunc) {
    size_t G = size_t(1) << log2G;
    std::vector<uint8_t> mask(G);
    for (size_t i = 0; i < G; ++i) {
        double t = (double(i) + 0.5) / double(G);
        mask[i] = in_B_alpha(ctx, t, N_trunc).member_up_to_N ? 1 : 0;
    }
    return mask;
}

namespace {
constexpr uint32_t kMaskVersion = 1;

std::string encode_mask(const std::vector<uint8_t>& mask, long N) {
    std::string s;
    s.reserve(mask.size() + 24);
    s.append("BLMB", 4);
    uint32_t v = kMaskVersion;
    s.append(reinterpret_cast<const char*>(&v), 4);
    uint64_t g = mask.size(), n = static_cast<uint64_t>(N);
    s.append(reinterpret_cast<const char*>(&g), 8);
    s.append(reinterpret_cast<const char*>(&n), 8);
    s.append(reinterpret_cast<const char*>(mask.data()), mask.size());
    return s;
}

bool decode_mask(const std::string& s, size_t G, long N, std::vector<uint8_t>& mask) {
    if (s.size() != 24 + G || std::memcmp(s.data(), "BLMB", 4) != 0) return false;
    uint32_t v;
    uint64_t g, n;
    std::memcpy(&v, s.data() + 4, 4);
    std::memcpy(&g, s.data() + 8, 8);
    std::memcpy(&n, s.data() + 16, 8);
    if (v != kMaskVersion || g != G || n != static_cast<uint64_t>(N)) return false;
    mask.assign(s.begin() + 24, s.end());
    return true;
}
}  // namespace

std::vector<uint8_t> grid_membership_cached(const AlphaContext& ctx, int log2G, long N_trunc,
                                            const ContentCache& cache) {
    std::string key = "bmask|v1|" + ctx.key() + "|G=" + std::to_string(log2G) +
                      "|N=" + std::to_string(N_trunc) + "|P=" + std::to_string(ctx.prec_bits());
    std::string blob;
    std::vector<uint8_t> mask;
    if (cache.get(key, blob) && decode_mask(blob, size_t(1) << log2G, N_trunc, mask)) return mask;
    mask = grid_membership(ctx, log2G, N_trunc);
    cache.put(key, encode_mask(mask, N_trunc));
    return mask;
}

std::vector<double> ergodic_coverage(const AlphaContext& ctx, long N_set, int N_orbit,
                                     long samples, uint64_t seed) {
    if (N_orbit < 1) throw std::invalid_argument("ergodic_coverage: N_orbit >= 1");
    Rng rng(seed);
    std::vector<long> first_hit_count(static_cast<size_t>(N_orbit) + 1, 0);
    for (long i = 0; i < samples; ++i) {
        double t = (double(i) + rng.next_double()) / double(samples);
        for (int k = 0; k <= N_orbit; ++k) {
            bool hit = false;
            if (k == 0) {
                hit = in_B_alpha(ctx, t, N_set).member_up_to_N;
            } else {
                double tp = frac01(t + ctx.rot(k));
                double tm = frac01(t + ctx.rot(-k));
                hit = in_B_alpha(ctx, tp, N_set).member_up_to_N ||
                      in_B_alpha(ctx, tm, N_set).member_up_to_N;
            }
            if (hit) {
                ++first_hit_count[static_cast<size_t>(k)];
                break;
            }
        }
    }
    std::vector<double> curve(static_cast<size_t>(N_orbit) + 1);
    long cum = 0;
    for (int k = 0; k <= N_orbit; ++k) {
        cum += first_hit_count[static_cast<size_t>(k)];
        curve[static_cast<size_t>(k)] = double(cum) / double(samples);
    }
    return curve;
}

}  // namespace bishoplab
