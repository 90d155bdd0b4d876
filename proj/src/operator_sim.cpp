#include "bishoplab/operator_sim.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>

#include "bishoplab/birkhoff.hpp"
#include "bishoplab/errors.hpp"
#include "bishoplab/sets.hpp"

namespace bishoplab {

double GridFunction::norm_p(double p) const {
    KahanSum acc;
    for (double x : v) acc.add(std::pow(std::fabs(x), p));
    return std::pow(acc.value() / double(v.size()), 1.0 / p);
}

GridFunction grid_constant(int log2G, double c) {
    GridFunction f;
    f.log2_G = log2G;
    f.v.assign(size_t(1) << log2G, c);
    return f;
}

std::vector<uint8_t> membership_mask(const AlphaContext& ctx, int log2G, long N_trunc) {
    return grid_membership(ctx, log2G, N_trunc);
}

GridFunction grid_indicator_B(const AlphaContext& ctx, int log2G, long N_trunc) {
    GridFunction f;
    f.log2_G = log2G;
    auto mask = membership_mask(ctx, log2G, N_trunc);
    f.v.assign(mask.begin(), mask.end());
    return f;
}

GridFunction apply_T(const GridFunction& f, const AlphaContext& ctx, OpVariant variant,
                     long phi_n) {
    size_t G = f.G();
    long s = std::lround(ctx.alpha() * double(G));
    GridFunction out;
    out.log2_G = f.log2_G;
    out.v.resize(G);
    const double scale = (variant == OpVariant::Ttilde || variant == OpVariant::TtildeStar)
                             ? std::exp(1.0)
                             : 1.0;
    for (size_t i = 0; i < G; ++i) {
        double t = f.t_mid(i);
        switch (variant) {
            case OpVariant::T:
            case OpVariant::Ttilde:
                out.v[i] = scale * t * f.v[(i + size_t(s)) % G];
                break;
            case OpVariant::Tstar:
            case OpVariant::TtildeStar: {
                size_t k = (i + G - size_t(s) % G) % G;
                out.v[i] = scale * f.t_mid(k) * f.v[k];
                break;
            }
            case OpVariant::TPhiN: {
                if (phi_n < 2) throw std::invalid_argument("apply_T: TPhiN needs n >= 2");
                double phi = t >= 1.0 / double(phi_n) ? t : 0.0;
                out.v[i] = phi * f.v[(i + size_t(s)) % G];
                break;
            }
        }
    }
    return out;
}

namespace {

// Incremental Birkhoff sums over the grid: after step n the arrays hold
//   L[i] = L_n(t_i)   (forward orbit, j = 0..n-1)
//   M[i] = L_n({t_i - n alpha}) (backward orbit, k = 1..n)
// updated only on masked points, where truncated B-membership keeps the
// fractional parts away from zero for n <= N_trunc.
struct SweepState {
    std::vector<double> L, Lc, M, Mc;
    std::vector<size_t> idx;  // masked indices
    std::vector<double> tmid;
    size_t G;

    SweepState(const std::vector<uint8_t>& mask, int log2G) {
        G = size_t(1) << log2G;
        for (size_t i = 0; i < G; ++i)
            if (mask[i]) idx.push_back(i);
        L.assign(idx.size(), 0.0);
        Lc.assign(idx.size(), 0.0);
        M.assign(idx.size(), 0.0);
        Mc.assign(idx.size(), 0.0);
        tmid.resize(idx.size());
        for (size_t k = 0; k < idx.size(); ++k) tmid[k] = (double(idx[k]) + 0.5) / double(G);
    }

    static inline void neumaier(double& s, double& c, double x) {
        double t = s + x;
        if (std::fabs(s) >= std::fabs(x))
            c += (s - t) + x;
        else
            c += (x - t) + s;
        s = t;
    }

    void step(double rot_fwd, double rot_bwd) {
        for (size_t k = 0; k < idx.size(); ++k) {
            double f1 = frac01(tmid[k] + rot_fwd);
            neumaier(L[k], Lc[k], 1.0 + std::log(f1));
            double f2 = frac01(tmid[k] + rot_bwd);
            neumaier(M[k], Mc[k], 1.0 + std::log(f2));
        }
    }

    // log of (1/G) sum over masked points of exp(sign * p * A[k])
    double log_integral(const std::vector<double>& A, const std::vector<double>& Ac, double p,
                        double sign) const {
        if (idx.empty()) return -1e308;
        double mx = -1e308;
        for (size_t k = 0; k < idx.size(); ++k)
            mx = std::max(mx, sign * p * (A[k] + Ac[k]));
        KahanSum acc;
        for (size_t k = 0; k < idx.size(); ++k)
            acc.add(std::exp(sign * p * (A[k] + Ac[k]) - mx));
        return mx + std::log(acc.value()) - std::log(double(G));
    }
};

void run_profile_sweep(const AlphaContext& ctx, double p, long n_max, int log2G, long N_trunc,
                       std::vector<std::vector<double>>& lognorm, double& mu_out) {
    auto mask = membership_mask(ctx, log2G, N_trunc);
    SweepState st(mask, log2G);
    mu_out = double(st.idx.size()) / double(st.G);
    lognorm.assign(4, std::vector<double>(size_t(n_max)));
    for (long n = 1; n <= n_max; ++n) {
        st.step(ctx.rot(n - 1), ctx.rot(-n));
        // families: x_fwd = int_B e^{pM}, x_bwd = int_B e^{-pL},
        //           y_fwd = int_B e^{pL},  y_bwd = int_B e^{-pM}
        lognorm[0][size_t(n - 1)] = st.log_integral(st.M, st.Mc, p, +1.0) / p;
        lognorm[1][size_t(n - 1)] = st.log_integral(st.L, st.Lc, p, -1.0) / p;
        lognorm[2][size_t(n - 1)] = st.log_integral(st.L, st.Lc, p, +1.0) / p;
        lognorm[3][size_t(n - 1)] = st.log_integral(st.M, st.Mc, p, -1.0) / p;
    }
}

}  // namespace

const std::vector<ProfileEntry>& NormProfile::family(int idx) const {
    switch (idx) {
        case 0: return x_fwd;
        case 1: return x_bwd;
        case 2: return y_fwd;
        default: return y_bwd;
    }
}

std::string NormProfile::csv() const {
    std::ostringstream os;
    os << "n,family,log1p_norm,err,method,flagged\n";
    const char* names[4] = {"x_fwd", "x_bwd", "y_fwd", "y_bwd"};
    os << "0,x_fwd," << fmt_double(log1p_n0) << ",0,exact,0\n";
    for (int fam = 0; fam < 4; ++fam) {
        const auto& v = family(fam);
        for (const auto& e : v)
            os << e.n << "," << names[fam] << "," << fmt_double(e.log1p_norm) << ","
               << fmt_double(e.err) << ","
               << (e.method == ProfileEntry::Method::Quadrature ? "quadrature" : "fast-certified")
               << "," << (e.flagged ? 1 : 0) << "\n";
    }
    return os.str();
}

NormProfile norm_profile(const AlphaContext& ctx, double p, long n_max, int log2G, long N_trunc,
                         bool halving_check) {
    if (n_max > N_trunc)
        throw std::invalid_argument("norm_profile: n_max must not exceed the B truncation");
    if (n_max > ctx.rot_limit())
        throw std::invalid_argument("norm_profile: n_max beyond rotation table");
    NormProfile prof;
    prof.p = p;
    prof.N_trunc = N_trunc;
    prof.log2G = log2G;
    prof.alpha_key = ctx.key();

    std::vector<std::vector<double>> ln_full, ln_half;
    run_profile_sweep(ctx, p, n_max, log2G, N_trunc, ln_full, prof.mu_B);
    double mu_half = 0;
    if (halving_check) run_profile_sweep(ctx, p, n_max, log2G - 1, N_trunc, ln_half, mu_half);
    prof.log1p_n0 = std::log1p(std::pow(prof.mu_B, 1.0 / p));

    auto fill = [&](std::vector<ProfileEntry>& fam, int f) {
        fam.resize(size_t(n_max));
        for (long n = 1; n <= n_max; ++n) {
            ProfileEntry& e = fam[size_t(n - 1)];
            e.n = n;
            e.log_norm = ln_full[size_t(f)][size_t(n - 1)];
            e.log1p_norm = log1p_exp(e.log_norm);
            double d = halving_check
                           ? std::fabs(e.log_norm - ln_half[size_t(f)][size_t(n - 1)])
                           : 0.0;
            e.err = d + 1e-12;
            e.flagged = e.err > std::max(0.1, 0.05 * std::fabs(e.log1p_norm));
        }
    };
    fill(prof.x_fwd, 0);
    fill(prof.x_bwd, 1);
    fill(prof.y_fwd, 2);
    fill(prof.y_bwd, 3);
    return prof;
}

NormResult norm_iterate(const AlphaContext& ctx, long n, double p, int direction, int log2G,
                        long N_trunc) {
    if (n < 0) throw std::invalid_argument("norm_iterate: n >= 0 (use direction for backward)");
    auto mask = membership_mask(ctx, log2G, N_trunc);
    size_t G = size_t(1) << log2G;
    if (n == 0) {
        long cnt = 0;
        for (auto m : mask) cnt += m;
        double mu = double(cnt) / double(G);
        double ln = std::log(mu) / p;
        return NormResult{log1p_exp(ln), ln, 1e-12};
    }
    // direction -> (orbit form, sign): fwd (M,+), bwd (L,-), adj-fwd (L,+), adj-bwd (M,-)
    bool use_M = direction == 0 || direction == 3;
    double sign = (direction == 0 || direction == 2) ? 1.0 : -1.0;
    double mx = -1e308;
    std::vector<double> vals;
    vals.reserve(G);
    for (size_t i = 0; i < G; ++i) {
        if (!mask[i]) continue;
        double t = (double(i) + 0.5) / double(G);
        KahanSum acc;
        if (use_M) {
            for (long k = n; k >= 1; --k) acc.add(1.0 + std::log(frac01(t + ctx.rot(-k))));
        } else {
            for (long j = 0; j < n; ++j) acc.add(1.0 + std::log(frac01(t + ctx.rot(j))));
        }
        double v = sign * p * acc.value();
        vals.push_back(v);
        mx = std::max(mx, v);
    }
    if (vals.empty()) return NormResult{0.0, -1e308, 0.0};
    KahanSum acc;
    for (double v : vals) acc.add(std::exp(v - mx));
    double log_int = mx + std::log(acc.value()) - std::log(double(G));
    double ln = log_int / p;
    return NormResult{log1p_exp(ln), ln, 1e-10 * std::max(1.0, std::fabs(ln))};
}

double sum_identity_check(const AlphaContext& ctx, long n, double p, int log2G, long N_trunc) {
    if (n < 0) throw std::invalid_argument("sum_identity_check: n >= 0");
    auto mask = membership_mask(ctx, log2G, N_trunc);
    size_t G = size_t(1) << log2G;
    // LHS: the two norms through the dedicated per-point routes
    NormResult fwd = norm_iterate(ctx, n, p, 0, log2G, N_trunc);
    NormResult bwd = norm_iterate(ctx, n, p, 1, log2G, N_trunc);
    double lhs = std::exp(p * fwd.log_norm) + std::exp(p * bwd.log_norm);
    // RHS: integrand evaluated through L_naive at the shifted argument
    KahanSum acc;
    double rshift = n == 0 ? 0.0 : ctx.rot(n);
    for (size_t i = 0; i < G; ++i) {
        if (!mask[i]) continue;
        double t = (double(i) + 0.5) / double(G);
        double l_shift = n == 0 ? 0.0 : L_naive(ctx, frac01(t - rshift), n).value;
        double l_here = n == 0 ? 0.0 : L_naive(ctx, t, n).value;
        acc.add(std::exp(p * l_shift) + std::exp(-p * l_here));
    }
    double rhs = acc.value() / double(G);
    return std::fabs(lhs - rhs) / rhs;
}

NilpotentReport nilpotent_approx(const AlphaContext& ctx, long n, int log2G) {
    if (n < 2) throw std::invalid_argument("nilpotent_approx: n >= 2");
    NilpotentReport rep;
    rep.norm_gap = 1.0 / double(n);  // sup of the multiplier t 1_[0,1/n)

    // orbit points {-j alpha} = {j (1-alpha)} as exact mantissas mod 2^P
    long P = ctx.prec_bits();
    BigInt modulus = BigInt(1) << P;
    BigInt beta = modulus - ctx.alpha_fixed().mantissa();
    uint64_t err0 = ctx.alpha_fixed().err_ulp();

    std::vector<BigInt> pts{BigInt(0)};
    BigInt acc(0);
    const long m_cap = 100000;
    for (long m = 2; m <= m_cap; ++m) {
        acc += beta;
        if (acc >= modulus) acc -= modulus;
        pts.push_back(acc);
        std::vector<BigInt> sorted = pts;
        std::sort(sorted.begin(), sorted.end());
        BigInt maxgap(0);
        for (size_t i = 0; i + 1 < sorted.size(); ++i)
            maxgap = std::max(maxgap, BigInt(sorted[i + 1] - sorted[i]));
        maxgap = std::max(maxgap, BigInt(modulus - sorted.back() + sorted.front()));
        BigInt e(static_cast<unsigned long>((err0 + 1) * static_cast<uint64_t>(m)));
        if (BigInt(n) * (maxgap + 2 * e) < modulus) {
            rep.m_star = m;
            rep.margin = 1.0 / double(n) -
                         std::ldexp(mpz_get_d(maxgap.get_mpz_t()), -int(P));
            break;
        }
    }
    if (rep.m_star == 0) throw precision_error("nilpotent_approx: no covering m found under cap");

    // witness surviving m*-1 steps: midpoint of the uncovered part of the
    // largest gap at m*-1
    {
        std::vector<BigInt> sorted(pts.begin(), pts.begin() + (rep.m_star - 1));
        std::sort(sorted.begin(), sorted.end());
        BigInt best_gap(0), best_lo(0);
        for (size_t i = 0; i < sorted.size(); ++i) {
            BigInt next = i + 1 < sorted.size() ? sorted[i + 1] : sorted[0] + modulus;
            BigInt gap = next - sorted[i];
            if (gap > best_gap) {
                best_gap = gap;
                best_lo = sorted[i];
            }
        }
        double lo = std::ldexp(mpz_get_d(best_lo.get_mpz_t()), -int(P));
        double gap = std::ldexp(mpz_get_d(best_gap.get_mpz_t()), -int(P));
        rep.witness_t = frac01(lo + 0.5 * (gap + 1.0 / double(n)));
    }

    GridFunction f = grid_constant(log2G, 1.0);
    for (long i = 0; i < rep.m_star; ++i) f = apply_T(f, ctx, OpVariant::TPhiN, n);
    rep.max_power_residual = 0.0;
    for (double x : f.v) rep.max_power_residual = std::max(rep.max_power_residual, std::fabs(x));
    return rep;
}

double commutation_check(const AlphaContext& ctx, long m, int log2G) {
    size_t G = size_t(1) << log2G;
    long s = std::lround(ctx.alpha() * double(G));
    const std::complex<double> I(0.0, 1.0);
    std::complex<double> phase = std::exp(-2.0 * M_PI * I * double(m) * ctx.alpha());

    std::vector<std::vector<std::complex<double>>> basis;
    auto add_basis = [&](auto&& fn) {
        std::vector<std::complex<double>> f(G);
        for (size_t i = 0; i < G; ++i) f[i] = fn((double(i) + 0.5) / double(G));
        basis.push_back(std::move(f));
    };
    add_basis([](double) { return std::complex<double>(1.0, 0.0); });
    add_basis([&](double t) { return std::exp(2.0 * M_PI * I * t); });
    add_basis([&](double t) { return std::exp(-2.0 * M_PI * I * t); });
    add_basis([&](double t) { return std::exp(4.0 * M_PI * I * t); });
    add_basis([](double t) { return std::complex<double>(t < 0.5 ? 1.0 : 0.0, 0.0); });
    add_basis([](double t) { return std::complex<double>(std::cos(2 * M_PI * t), 0.0); });

    double defect = 0.0;
    for (const auto& f : basis) {
        for (size_t i = 0; i < G; ++i) {
            double t = (double(i) + 0.5) / double(G);
            std::complex<double> Tf = t * f[(i + size_t(s)) % G];
            std::complex<double> mult_t = std::exp(2.0 * M_PI * I * double(m) * t);
            double t_rot = (double((i + size_t(s)) % G) + 0.5) / double(G);
            std::complex<double> mult_rot = std::exp(2.0 * M_PI * I * double(m) * t_rot);
            std::complex<double> lhs = mult_t * Tf;
            std::complex<double> rhs = phase * (t * mult_rot * f[(i + size_t(s)) % G]);
            defect = std::max(defect, std::abs(lhs - rhs));
        }
    }
    return defect;
}

std::vector<double> local_radius_trend(const AlphaContext& ctx, double p,
                                       const std::vector<long>& N_list, int log2G, long N_trunc) {
    long n_max = 0;
    for (long N : N_list) n_max = std::max(n_max, N);
    NormProfile prof = norm_profile(ctx, p, n_max, log2G, N_trunc, false);
    std::vector<double> s;
    for (long N : N_list) {
        double mx = 0.0;
        for (long n = N / 2; n <= N; ++n)
            mx = std::max(mx, std::fabs(prof.x_bwd[size_t(n - 1)].log_norm) / double(n));
        s.push_back(mx);
    }
    return s;
}

}  // namespace bishoplab
