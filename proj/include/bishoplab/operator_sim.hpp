#ifndef BISHOPLAB_OPERATOR_SIM_HPP
#define BISHOPLAB_OPERATOR_SIM_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "bishoplab/alpha_context.hpp"

namespace bishoplab {

// L^p[0,1) discretized at midpoints t_i = (i + 1/2)/G, G a power of two so
// halving checks are available.
struct GridFunction {
    std::vector<double> v;
    int log2_G;
    size_t G() const { return v.size(); }
    double t_mid(size_t i) const { return (double(i) + 0.5) / double(v.size()); }
    double norm_p(double p) const;
};

GridFunction grid_constant(int log2G, double c);
GridFunction grid_indicator_B(const AlphaContext& ctx, int log2G, long N_trunc);
std::vector<uint8_t> membership_mask(const AlphaContext& ctx, int log2G, long N_trunc);

enum class OpVariant { T, Ttilde, Tstar, TtildeStar, TPhiN };

// Pointwise t f({t+alpha}) (times e for the normalized variant); rotation
// applied as nearest grid index, error O(1/G).
GridFunction apply_T(const GridFunction& f, const AlphaContext& ctx, OpVariant variant,
                     long phi_n = 0);

struct ProfileEntry {
    long n = 0;
    double log1p_norm = 0.0;  // log(1 + ||.||)
    double log_norm = 0.0;    // log ||.||
    double err = 0.0;         // halving-check disagreement + rounding floor
    enum class Method { Quadrature, FastCertified } method = Method::Quadrature;
    bool flagged = false;  // quadrature non-convergence
};

// Iterate-norm profiles of x = y = 1_{B_alpha} for the four families
//   x_fwd: ||T~^n x||   x_bwd: ||T~^-n x||
//   y_fwd: ||T~*^n y||  y_bwd: ||T~*^-n y||
// computed through the exact exponential formulas + midpoint quadrature
// (never by powering the grid operator).
struct NormProfile {
    std::vector<ProfileEntry> x_fwd, x_bwd, y_fwd, y_bwd;  // [k] is n = k+1
    double log1p_n0 = 0.0;  // log(1 + mu(B)^(1/p))
    double mu_B = 0.0;
    double p = 2.0;
    long N_trunc = 0;
    int log2G = 0;
    std::string alpha_key;

    const std::vector<ProfileEntry>& family(int idx) const;  // 0..3 as above
    std::string csv() const;
};

NormProfile norm_profile(const AlphaContext& ctx, double p, long n_max, int log2G, long N_trunc,
                         bool halving_check = true);

// Single-n norm by the direct per-point route (independent of the sweep).
// direction: 0 = fwd, 1 = bwd, 2 = adj-fwd, 3 = adj-bwd.
struct NormResult {
    double log1p_norm, log_norm, err;
};
NormResult norm_iterate(const AlphaContext& ctx, long n, double p, int direction, int log2G,
                        long N_trunc);

// Relative defect of ||T~^n f||^p + ||T~^-n f||^p =
// int (e^{p L_n(t - n alpha)} + e^{-p L_n(t)}) |f|^p dt for f = 1_B, the two
// sides computed through independent evaluation routes.
double sum_identity_check(const AlphaContext& ctx, long n, double p, int log2G, long N_trunc);

struct NilpotentReport {
    long m_star = 0;             // least m with every length-m orbit hitting [0,1/n)
    double margin = 0.0;         // 1/n - max orbit gap at m*, certified positive
    double max_power_residual = 0.0;
    double norm_gap = 0.0;       // ||T_phi_n - T_alpha|| = 1/n exactly
    double witness_t = 0.0;      // survives m*-1 steps outside [0,1/n)
};
NilpotentReport nilpotent_approx(const AlphaContext& ctx, long n, int log2G);

// max pointwise defect of M_{e^{2 pi i m t}} T - e^{-2 pi i m alpha} T M over
// a small test basis; 0 exactly at m = 0, O(m/G) otherwise.
double commutation_check(const AlphaContext& ctx, long m, int log2G);

// s(N) = max_{N/2 <= n <= N} (1/n) |log ||T~^-n 1_B|||; the local-spectral
// mechanism predicts decay toward 0.
std::vector<double> local_radius_trend(const AlphaContext& ctx, double p,
                                       const std::vector<long>& N_list, int log2G, long N_trunc);

}  // namespace bishoplab

#endif
