#include "bishoplab/beurling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "bishoplab/birkhoff.hpp"
#include "bishoplab/errors.hpp"
#include "bishoplab/sets.hpp"

namespace bishoplab {

WeightSequence WeightSequence::davie(double rho) {
    WeightSequence w;
    w.family = Family::Davie;
    w.rho = rho;
    return w;
}

WeightSequence WeightSequence::flattot(double sigma, double c_sigma) {
    WeightSequence w;
    w.family = Family::Flattot;
    w.sigma = sigma;
    w.c_sigma = c_sigma;
    return w;
}

WeightSequence WeightSequence::main(double c) {
    WeightSequence w;
    w.family = Family::Main;
    w.c = c;
    return w;
}

WeightSequence WeightSequence::tabulated(std::vector<double> log_rho) {
    WeightSequence w;
    w.family = Family::Tabulated;
    w.table = std::move(log_rho);
    return w;
}

WeightSequence WeightSequence::parse(const std::string& spec) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ':')) parts.push_back(tok);
    if (parts.empty()) throw std::invalid_argument("empty weight spec");
    if (parts[0] == "davie") return davie(parts.size() > 1 ? std::stod(parts[1]) : 0.75);
    if (parts[0] == "main") return main(parts.size() > 1 ? std::stod(parts[1]) : 1.0);
    if (parts[0] == "flattot")
        return flattot(parts.size() > 1 ? std::stod(parts[1]) : 2.0,
                       parts.size() > 2 ? std::stod(parts[2]) : 1.0);
    throw std::invalid_argument("unknown weight family: " + parts[0]);
}

double WeightSequence::log_rho(long n) const {
    long a = std::labs(n);
    if (a == 0) return 0.0;
    double x = double(a);
    double v = 0.0;
    switch (family) {
        case Family::Davie: v = std::pow(x, rho); break;
        case Family::Flattot: v = c_sigma * x / std::pow(std::log(2.0 + x), sigma); break;
        case Family::Main: {
            double ll = std::log(std::log(4.0 + x));
            v = c * x / (std::log(2.0 + x) * ll * ll);
            break;
        }
        case Family::Tabulated:
            if (static_cast<size_t>(a) >= table.size())
                throw std::out_of_range("tabulated weight: index beyond table");
            v = table[static_cast<size_t>(a)];
            break;
    }
    return std::max(v, 0.0);
}

std::string WeightSequence::name() const {
    char buf[64];
    switch (family) {
        case Family::Davie: std::snprintf(buf, sizeof buf, "davie:%g", rho); return buf;
        case Family::Flattot:
            std::snprintf(buf, sizeof buf, "flattot:%g:%g", sigma, c_sigma);
            return buf;
        case Family::Main: std::snprintf(buf, sizeof buf, "main:%g", c); return buf;
        case Family::Tabulated: return "tabulated";
    }
    return "?";
}

BeurlingCheck is_beurling(const WeightSequence& w, long N) {
    if (N < 8) throw std::invalid_argument("is_beurling: N >= 8");
    BeurlingCheck chk;
    chk.N = N;
    // table out to 2N so rho_{m+n} is addressable
    std::vector<double> lr(static_cast<size_t>(2 * N + 1));
    long table_max = w.family == WeightSequence::Family::Tabulated
                         ? std::min<long>(2 * N, static_cast<long>(w.table.size()) - 1)
                         : 2 * N;
    for (long k = 0; k <= table_max; ++k) lr[static_cast<size_t>(k)] = w.log_rho(k);

    // rho symmetric: all sign patterns reduce to |m+n| and |m-n| with m,n >= 0
    const double tol = 1e-12;
    chk.submult_ok = true;
    chk.worst_excess = -1e300;
    for (long m = 0; m <= N; ++m) {
        for (long n = m; n <= N; ++n) {
            if (m + n <= table_max) {
                double ex = lr[size_t(m + n)] - lr[size_t(m)] - lr[size_t(n)];
                if (ex > chk.worst_excess) {
                    chk.worst_excess = ex;
                    chk.worst_m = m;
                    chk.worst_n = n;
                }
                if (ex > tol) chk.submult_ok = false;
            }
            double ex2 = lr[size_t(n - m)] - lr[size_t(m)] - lr[size_t(n)];
            if (ex2 > chk.worst_excess) {
                chk.worst_excess = ex2;
                chk.worst_m = -m;
                chk.worst_n = n;
            }
            if (ex2 > tol) chk.submult_ok = false;
        }
    }

    KahanSum tp;
    long tail_n = std::min<long>(N, table_max);
    for (long n = 1; n <= tail_n; ++n) tp.add(2.0 * lr[size_t(n)] / (1.0 + double(n) * double(n)));
    chk.tail_partial = tp.value();

    double x = double(N);
    switch (w.family) {
        case WeightSequence::Family::Davie:
            if (w.rho < 1.0) {
                chk.tail = BeurlingCheck::Tail::Convergent;
                chk.tail_bound = 2.0 * std::pow(x, w.rho - 1.0) / (1.0 - w.rho);
            } else {
                chk.tail = BeurlingCheck::Tail::Divergent;
                chk.tail_bound = std::numeric_limits<double>::infinity();
            }
            break;
        case WeightSequence::Family::Flattot:
            if (w.sigma > 1.0) {
                chk.tail = BeurlingCheck::Tail::Convergent;
                chk.tail_bound =
                    2.0 * w.c_sigma / ((w.sigma - 1.0) * std::pow(std::log(2.0 + x), w.sigma - 1.0));
            } else {
                chk.tail = BeurlingCheck::Tail::Divergent;
                chk.tail_bound = std::numeric_limits<double>::infinity();
            }
            break;
        case WeightSequence::Family::Main:
            // substitute u = loglog: integral bounded by c / loglog(4+N)
            chk.tail = BeurlingCheck::Tail::Convergent;
            chk.tail_bound = 2.0 * w.c / std::log(std::log(4.0 + x));
            break;
        case WeightSequence::Family::Tabulated:
            chk.tail = BeurlingCheck::Tail::Unknown;
            chk.tail_bound = 0.0;
            break;
    }
    return chk;
}

Domination dominates(const std::vector<double>& log_a, const WeightSequence& w, long N) {
    Domination d;
    long top = std::min<long>(N, static_cast<long>(log_a.size()) - 1);
    double best = -1e308;
    for (long n = 0; n <= top; ++n) {
        if (log_a[size_t(n)] <= -1e307) continue;  // a_n = 0 never binds
        double r = log_a[size_t(n)] - w.log_rho(n);
        best = std::max(best, r);
    }
    if (best <= -1e307) {
        d.c = 0.0;
        return d;
    }
    d.c = std::exp(best);
    for (long n = 0; n <= top; ++n) {
        if (log_a[size_t(n)] <= -1e307) continue;
        if (log_a[size_t(n)] - w.log_rho(n) >= best - 1e-12) d.tight.push_back(n);
    }
    return d;
}

namespace {

struct LevelWindow {
    size_t j;
    BigInt lo, hi;
    double log_q, qd;
};

// certified sublevel window [eps^-2 q^2 log q, eps^2 Q/q] with conservative
// integer endpoints
bool level_window(const AlphaContext& ctx, size_t j, double eps, LevelWindow& out) {
    Level lv = ctx.level(j);
    if (lv.q < 2) return false;
    double lo_d = (lv.qd * lv.qd * lv.log_q) / (eps * eps);
    if (!(lo_d < 1e18)) return false;
    BigInt lo(static_cast<long>(std::ceil(lo_d * (1 + 1e-9))) + 1);
    // hi = eps^2 Q / q through exact integers: eps as rational k/10^6
    long k = std::lround(eps * 1e6);
    BigInt hi = (lv.Q * k * k) / (BigInt(1000000) * BigInt(1000000) * lv.q);
    hi -= 1;
    if (hi <= lo) return false;
    out.j = j;
    out.lo = lo;
    out.hi = hi;
    out.log_q = lv.log_q;
    out.qd = lv.qd;
    return true;
}

// integral lower bound of sum_{n in [lo,hi]} (s n - kappa)/(1+n^2):
// integrand is decreasing, so the sum dominates the integral over [lo, hi]
double increment_lower_bound(const BigInt& lo, const BigInt& hi, double s, double kappa) {
    double llo = log_big(lo), lhi = log_big(hi);
    double lod = mpz_get_d(lo.get_mpz_t());
    double i1 = (lhi - llo) - 0.5 / (lod * lod);  // >= int n/(1+n^2)
    double i2 = 1.0 / lod;                        // >= int 1/(1+n^2)
    return s * i1 - kappa * i2;
}

}  // namespace

DivergenceReport divergence_diagnostic(const AlphaContext& ctx, double p, int blocks, double eps,
                                       const NormProfile* profile) {
    if (blocks < 1) throw std::invalid_argument("divergence_diagnostic: blocks >= 1");
    if (!(eps > 0 && eps < 0.25))
        throw std::invalid_argument("divergence_diagnostic: eps in (0, 1/4)");
    DivergenceReport rep;

    // the paper's measure bound mu(S) <= 20 eps certifies the surviving mass
    // only when 20 eps is well under mu(B) >= 1 - (2+2pi^2/3)/20
    const double mu_B_lower = 1.0 - (2.0 + 2.0 * M_PI * M_PI / 3.0) / 20.0;
    double mass = mu_B_lower - 20.0 * eps;

    std::vector<LevelWindow> usable;
    if (mass > 0.05) {
        for (size_t j = 0; j + 1 <= ctx.table().depth(); ++j) {
            LevelWindow w;
            if (level_window(ctx, j, eps, w)) usable.push_back(w);
        }
    }

    if (!usable.empty()) {
        rep.sublevel_mechanism = true;
        double kappa = std::log(2.0 / mass) / p;
        // assign distinct levels first; split the largest window log-evenly
        // when fewer levels than requested blocks
        std::vector<std::pair<LevelWindow, std::pair<BigInt, BigInt>>> ranges;
        size_t take = std::min<size_t>(usable.size(), static_cast<size_t>(blocks));
        for (size_t i = 0; i < take; ++i)
            ranges.push_back({usable[i], {usable[i].lo, usable[i].hi}});
        int missing = blocks - static_cast<int>(take);
        if (missing > 0) {
            LevelWindow big = usable.back();
            ranges.pop_back();
            int parts = missing + 1;
            double llo = log_big(big.lo), lhi = log_big(big.hi);
            BigInt prev = big.lo;
            for (int i = 1; i <= parts; ++i) {
                BigInt next;
                if (i == parts) {
                    next = big.hi;
                } else {
                    double cut = llo + (lhi - llo) * double(i) / double(parts);
                    // exp as big integer via base-2 split
                    double lg = cut / M_LN2;
                    long mexp = static_cast<long>(std::floor(lg));
                    auto mant = static_cast<long long>(
                        std::llround(std::ldexp(std::exp2(lg - double(mexp)), 40)));
                    next = BigInt(static_cast<long>(mant));
                    if (mexp - 40 >= 0)
                        next <<= (mexp - 40);
                    else
                        mpz_fdiv_q_2exp(next.get_mpz_t(), next.get_mpz_t(),
                                        static_cast<mp_bitcnt_t>(40 - mexp));
                }
                ranges.push_back({big, {prev, next}});
                prev = next + 1;
            }
        }

        for (auto& [w, r] : ranges) {
            DivergenceBlock b;
            b.level = w.j;
            b.eps = eps;
            b.n_lo = r.first;
            b.n_hi = r.second;
            b.slope = eps * w.log_q / w.qd;
            b.kappa = std::log(2.0 / mass) / p;
            b.mass_W = mass;
            b.mechanism = "sublevel";
            b.increment = increment_lower_bound(b.n_lo, b.n_hi, b.slope, kappa);

            // spot verification of the envelope through the O(q) fast path
            Rng rng(0xb10cull + w.j);
            for (int sc = 0; sc < 16; ++sc) {
                double t;
                int guard = 0;
                for (;;) {
                    t = rng.next_double();
                    auto s = in_S_q_eps(ctx, w.j, eps, t);
                    if (!s.in_S && !s.uncertain) break;
                    if (++guard > 10000) break;
                }
                if (guard > 10000) break;
                double u = rng.next_double();
                double ln_n = log_big(b.n_lo) + u * (log_big(b.n_hi) - log_big(b.n_lo));
                long n = static_cast<long>(std::min(std::exp(ln_n), 4e18));
                try {
                    SumResult f = L_fast(ctx, w.j, t, n, eps);
                    ++b.spot_checks;
                    double target = eps * double(n) / w.qd * w.log_q;
                    if (std::fabs(f.value) - f.err_bound <= target) ++b.spot_failures;
                } catch (const window_error&) {
                    // n fell outside the long-representable part of the window
                }
            }
            rep.blocks.push_back(std::move(b));
        }
    } else {
        // profile mode: direct sums over convergent blocks (q_j, q_{j+1}]
        rep.sublevel_mechanism = false;
        rep.note = "no level admits a certified sublevel window; profile sums reported";
        if (profile == nullptr)
            throw std::invalid_argument(
                "divergence_diagnostic: profile mode requires a computed NormProfile");
        long n_max = static_cast<long>(profile->x_fwd.size());
        // top `blocks` levels with q_{j+1} <= n_max
        std::vector<size_t> lvls;
        for (size_t j = 0; j + 1 <= ctx.table().depth(); ++j) {
            if (ctx.table().q(j + 1) <= BigInt(n_max) && ctx.table().q(j) >= 2)
                lvls.push_back(j);
        }
        if (lvls.size() < static_cast<size_t>(blocks))
            throw std::invalid_argument("divergence_diagnostic: profile too short for blocks");
        lvls.erase(lvls.begin(), lvls.end() - blocks);
        for (size_t j : lvls) {
            DivergenceBlock b;
            b.level = j;
            b.eps = eps;
            b.n_lo = ctx.table().q(j) + 1;
            b.n_hi = ctx.table().q(j + 1);
            b.mechanism = "profile";
            KahanSum acc;
            for (BigInt n = b.n_lo; n <= b.n_hi; ++n) {
                long k = static_cast<long>(n.get_si());
                double s = profile->x_fwd[size_t(k - 1)].log1p_norm +
                           profile->x_bwd[size_t(k - 1)].log1p_norm;
                acc.add(s / (1.0 + double(k) * double(k)));
            }
            b.increment = acc.value();
            b.slope = 0.0;
            b.kappa = 0.0;
            b.mass_W = 0.0;
            rep.blocks.push_back(std::move(b));
        }
    }

    // pairwise disjointness, exact integer comparison
    rep.disjoint_ok = true;
    for (size_t i = 0; i + 1 < rep.blocks.size(); ++i)
        if (!(rep.blocks[i].n_hi < rep.blocks[i + 1].n_lo)) rep.disjoint_ok = false;
    return rep;
}

AtzmonReport atzmon_verdict(const NormProfile& prof, const std::vector<WeightSequence>& candidates,
                            const DivergenceReport* diag) {
    AtzmonReport rep;
    rep.range_N = static_cast<long>(prof.x_fwd.size());
    if (candidates.empty()) {
        rep.verdict = "no candidates";
        return rep;
    }

    rep.obstruction = false;
    if (diag != nullptr && diag->sublevel_mechanism) {
        bool all_pos = !diag->blocks.empty();
        for (const auto& b : diag->blocks)
            if (b.increment < 1e-6) all_pos = false;
        rep.obstruction = all_pos;
    }

    const char* names[4] = {"x_fwd", "x_bwd", "y_fwd", "y_bwd"};
    bool any_pass = false;
    for (const auto& w : candidates) {
        CandidateVerdict cv;
        cv.candidate = w.name();
        BeurlingCheck bc = is_beurling(w, std::min<long>(rep.range_N, 4096));
        cv.beurling_ok = bc.submult_ok && bc.tail == BeurlingCheck::Tail::Convergent;
        bool ok = cv.beurling_ok;
        for (int fam = 0; fam < 4; ++fam) {
            const auto& entries = prof.family(fam);
            // fit against quadrature value + declared err: the halving check
            // bounds the grid sensitivity, so this is the conservative side
            std::vector<double> log_a(entries.size() + 1);
            log_a[0] = std::log(std::max(std::pow(prof.mu_B, 1.0 / prof.p), 1e-300));
            long flagged = 0;
            for (size_t k = 0; k < entries.size(); ++k) {
                log_a[k + 1] = entries[k].log_norm + entries[k].err;
                if (entries[k].flagged) ++flagged;
            }
            Domination d = dominates(log_a, w, rep.range_N);
            FamilyFit fit;
            fit.family = names[fam];
            fit.c = d.c;
            fit.binding_n = d.tight.empty() ? 0 : d.tight.back();
            fit.boundary_binding = fit.binding_n >= static_cast<long>(0.9 * double(rep.range_N));
            // flags mark grid-sensitive backward entries; the fit already
            // took the conservative side, so they inform rather than veto
            fit.flagged_entries = flagged > 0;
            cv.fits.push_back(fit);
            if (fit.boundary_binding) ok = false;
        }
        cv.passes = ok && !rep.obstruction;
        if (!cv.beurling_ok)
            cv.reason = "not a Beurling sequence";
        else if (rep.obstruction)
            cv.reason = "divergence obstruction: certified block increments do not decay";
        else if (!ok)
            cv.reason = "domination binds at the range boundary";
        else
            cv.reason = "dominates all four families on the computed range";
        any_pass = any_pass || cv.passes;
        rep.candidates.push_back(std::move(cv));
    }
    if (rep.obstruction)
        rep.verdict = "not applicable (empirical divergence obstruction)";
    else if (any_pass)
        rep.verdict = "Atzmon-applicable (empirically, to range N=" + std::to_string(rep.range_N) + ")";
    else
        rep.verdict = "inconclusive on the computed range";
    return rep;
}

}  // namespace bishoplab
