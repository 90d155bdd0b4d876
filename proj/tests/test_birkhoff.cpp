#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bishoplab/birkhoff.hpp>
#include <bishoplab/errors.hpp>
#include <bishoplab/registry.hpp>
#include <bishoplab/sets.hpp>

#include <cmath>

using namespace bishoplab;

namespace {
const AlphaContext& golden() {
    static AlphaContext ctx(make_irrational("golden"), 40, 192, 60000);
    return ctx;
}
// q=5 level with Q ~ 1e7: fast-path window [~4024, 20000] at eps = 0.1
const AlphaContext& fastpath_alpha() {
    static AlphaContext ctx(make_irrational("cf:2,2,2000001+const:1"), 24, 192, 60000);
    return ctx;
}
}  // namespace

TEST_CASE("L_0 = 0 exactly") {
    auto r = L_naive(golden(), 0.3, 0);
    CHECK(r.value == 0.0);
    CHECK(r.err_bound == 0.0);
}

TEST_CASE("single term: L_1(0.5) = 1 - log 2") {
    auto r = L_naive(golden(), 0.5, 1);
    CHECK(r.value == doctest::Approx(1.0 - std::log(2.0)).epsilon(1e-15));
}

TEST_CASE("two-term hand oracle at golden, t = 0.1") {
    double alpha = golden().alpha();
    double expect = 2.0 + std::log(0.1) + std::log(0.1 + alpha);
    auto r = L_naive(golden(), 0.1, 2);
    CHECK(r.value == doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("scaling: L_{s,n} = s L_n up to one rounding") {
    auto base = L_naive(golden(), 0.37, 200, 1.0);
    auto scaled = L_naive(golden(), 0.37, 200, 2.5);
    CHECK(scaled.value == doctest::Approx(2.5 * base.value).epsilon(1e-15));
}

TEST_CASE("telescoping: L_{m+n}(t) = L_m(t) + L_n({t+m alpha})") {
    const auto& ctx = golden();
    for (long m : {7L, 50L, 333L}) {
        long n = 101;
        double t = 0.2345;
        auto whole = L_naive(ctx, t, m + n);
        auto head = L_naive(ctx, t, m);
        double t_shift = frac01(t + ctx.rot(m));
        auto tail = L_naive(ctx, t_shift, n);
        INFO("m=", m);
        CHECK(std::fabs(whole.value - head.value - tail.value) <=
              whole.err_bound + head.err_bound + tail.err_bound + 1e-10);
    }
}

TEST_CASE("orbit hitting zero is a precision error, not a silent answer") {
    const auto& ctx = golden();
    double t = frac01(0.0 - ctx.rot(3));  // lands on the backward orbit at j = 3
    CHECK_THROWS_AS(L_naive(ctx, t, 5), precision_error);
}

TEST_CASE("block decomposition at golden (q,Q) = (5,8)") {
    auto dec = block_decompose(golden(), 4);
    CHECK(dec.q == 5);
    CHECK(dec.Q == 8);
    CHECK(std::fabs(dec.delta) > 0.5);
    CHECK(std::fabs(dec.delta) < 1.0);
    CHECK(dec.delta_l[0] == 0.0);  // j_0 = 0
    // l -> j_l is a permutation of {0..q-1}
    std::vector<bool> seen(5, false);
    for (long jl : dec.j_l) {
        CHECK(jl >= 0);
        CHECK(jl < 5);
        CHECK(!seen[size_t(jl)]);
        seen[size_t(jl)] = true;
    }
    // same sign, |delta_l| < 1, scaled permutation image
    for (size_t l = 0; l < 5; ++l) {
        CHECK(std::fabs(dec.delta_l[l]) < 1.0);
        CHECK(dec.delta_l[l] * dec.delta >= 0.0);
        CHECK(dec.delta_l[l] ==
              doctest::Approx(double(dec.j_l[l]) * dec.delta / 5.0).epsilon(1e-12));
    }
}

TEST_CASE("block identity: L_block == L_naive({t + k q alpha}, q) across golden levels") {
    const auto& ctx = golden();
    Rng rng(0xb10c);
    // golden levels with q = 2,3,5,...,144 are j = 2..11
    for (size_t j = 2; j <= 11; ++j) {
        auto dec = block_decompose(ctx, j);
        long q = static_cast<long>(dec.q.get_si());
        for (long k = 0; k <= 50; k += 10) {
            for (int rep = 0; rep < 4; ++rep) {
                double t = rng.next_double();
                SumResult blk;
                try {
                    blk = L_block(ctx, dec, t, k);
                } catch (const precision_error&) {
                    continue;  // t too close to the orbit: no claim
                }
                double t_shift = frac01(t + ctx.rot(k * q));
                auto naive = L_naive(ctx, t_shift, q);
                INFO("q=", q, " k=", k);
                CHECK(std::fabs(blk.value - naive.value) <= 1e-9);
            }
        }
    }
}

TEST_CASE("negative control: corrupting the delta_l signs breaks the identity") {
    const auto& ctx = golden();
    auto dec = block_decompose(ctx, 6);  // q = 13
    for (size_t l = 1; l < dec.delta_l.size(); l += 2) dec.delta_l[l] = -dec.delta_l[l];
    int breaks = 0;
    Rng rng(7);
    for (int rep = 0; rep < 20; ++rep) {
        double t = rng.next_double();
        try {
            auto blk = L_block(ctx, dec, t, 3);
            double t_shift = frac01(t + ctx.rot(3 * 13));
            auto naive = L_naive(ctx, t_shift, 13);
            if (std::fabs(blk.value - naive.value) > 1e-6) ++breaks;
        } catch (const precision_error&) {
        }
    }
    CHECK(breaks > 10);
}

TEST_CASE("L_cal: q = 1 degenerates to 1 + log x") {
    CHECK(L_cal(0.3, 1.0) == doctest::Approx(1.0 + std::log(0.3)).epsilon(1e-12));
}

TEST_CASE("L_cal against the direct-summation oracle") {
    for (long q : {2L, 5L, 17L, 1000L}) {
        for (double x : {0.01, 0.25, 0.5, 0.75, 0.99}) {
            INFO("q=", q, " x=", x);
            CHECK(L_cal(x, double(q)) == doctest::Approx(L_cal_direct(x, q)).epsilon(1e-9));
        }
    }
}

TEST_CASE("L_cal slope at 100 sample points is at least log q") {
    for (long q : {2L, 5L, 50L}) {
        double h = 1e-7;
        for (int i = 1; i < 100; ++i) {
            double x = double(i) / 100.0;
            double slope = (L_cal(x + h, double(q)) - L_cal(x, double(q))) / h;
            INFO("q=", q, " x=", x);
            CHECK(slope >= std::log(double(q)) - 1e-5 * std::log(double(q) + 1));
        }
    }
}

TEST_CASE("fast path agrees with the naive oracle inside its window") {
    const auto& ctx = fastpath_alpha();
    const size_t level = 2;  // (q, Q) = (5, 10000007)
    const double eps = 0.1;
    auto w = l_fast_window(ctx, level, eps);
    REQUIRE(w.nonempty);
    Rng rng(0xfa57);
    int tested = 0;
    while (tested < 50) {
        double t = rng.next_double();
        if (dist_to_int(5.0 * t) <= 2 * eps + 1e-9) continue;
        long n = static_cast<long>(w.n_lo + rng.next_double() * (std::min(w.n_hi, 5e4) - w.n_lo));
        SumResult fast = L_fast(ctx, level, t, n, eps);
        SumResult naive = L_naive(ctx, t, n);
        INFO("t=", t, " n=", n);
        CHECK(std::fabs(fast.value - naive.value) <= fast.err_bound);
        ++tested;
    }
}

TEST_CASE("fast path err_bound grows linearly in n inside the window") {
    const auto& ctx = fastpath_alpha();
    const double eps = 0.1;
    SumResult a = L_fast(ctx, 2, 0.13, 8000, eps);
    SumResult b = L_fast(ctx, 2, 0.13, 16000, eps);
    double q = 5.0, boundary = q * (1.0 - std::log(2 * eps / q));
    double lin_a = a.err_bound - boundary, lin_b = b.err_bound - boundary;
    CHECK(lin_b == doctest::Approx(2.0 * lin_a).epsilon(1e-6));
}

TEST_CASE("fast path degenerates to n (1 + log t) at a q = 1 level") {
    // a_1 = 1 makes q_1 = 1 with Q = 5000001: window [1, eps^2 Q]
    AlphaContext ctx(make_irrational("cf:1,5000000+const:1"), 24, 192, 9000);
    REQUIRE(ctx.level(1).q == 1);
    double t = 0.37, eps = 0.1;
    long n = 5000;
    SumResult fast = L_fast(ctx, 1, t, n, eps);
    CHECK(fast.value == doctest::Approx(double(n) * (1.0 + std::log(t))).epsilon(1e-12));
    // rotation drifts by at most eps^2/q^2 per step here, so naive agrees
    SumResult naive = L_naive(ctx, t, n);
    CHECK(std::fabs(fast.value - naive.value) <= fast.err_bound);
}

TEST_CASE("fast path refuses out-of-window inputs explicitly") {
    const auto& ctx = fastpath_alpha();
    CHECK_THROWS_AS(L_fast(ctx, 2, 0.13, 100, 0.1), window_error);       // n below window
    CHECK_THROWS_AS(L_fast(ctx, 2, 0.13, 10000000, 0.1), window_error);  // n above window
    CHECK_THROWS_AS(L_fast(ctx, 2, 0.2001, 8000, 0.1), window_error);    // <qt> ~ 0 at t ~ 1/5
    CHECK_THROWS_AS(L_fast(ctx, 2, 0.13, 8000, 0.3), window_error);      // eps >= 1/4
    // golden levels have Q ~ phi q: no window at any eps
    CHECK_THROWS_AS(L_fast(golden(), 6, 0.13, 100, 0.1), window_error);
}

TEST_CASE("davie bracket shapes") {
    const auto& ctx = golden();
    auto b = davie_bracket(ctx, 4, 12, 1e-3);  // q = 5, n = 12
    CHECK(b.r == 2);
    CHECK(b.r_prime == 3);
    auto c = davie_bracket(ctx, 4, 15, 1e-3);  // q | n
    CHECK(c.r == 0);
    CHECK(c.r_prime == 0);
    auto d = davie_bracket(ctx, 4, 3, 1e-3);  // n < q: upper dominated by the r term
    CHECK(d.r == 3);
    CHECK(d.upper == doctest::Approx(3.0 + 3.0 / 5.0 * std::log(6.0)).epsilon(1e-12));
    CHECK(b.lower < 0.0);
}

TEST_CASE("fit_constant: finite constants, monotone in the range, witnesses in B") {
    const auto& ctx = golden();
    Rng rng(0x5eed);
    std::vector<double> samples;
    while (samples.size() < 12) {
        double t = rng.uniform(0.05, 0.95);
        if (in_B_alpha(ctx, t, 2000).member_up_to_N) samples.push_back(t);
    }
    auto fit1 = fit_constant(ctx, 8, samples, 1000, false);
    auto fit2 = fit_constant(ctx, 8, samples, 2000, false);
    CHECK(fit1.c_upper > 0.0);
    CHECK(fit1.c_lower > 0.0);
    CHECK(std::isfinite(fit1.c_upper));
    CHECK(std::isfinite(fit1.c_lower));
    // sup over a larger n-range never decreases
    CHECK(fit2.c_upper >= fit1.c_upper - 1e-15);
    CHECK(fit2.c_lower >= fit1.c_lower - 1e-15);

    CHECK_THROWS_AS(fit_constant(ctx, 8, samples, 0, false), std::invalid_argument);
    std::vector<double> bad{frac01(0.0 + ctx.rot(2))};  // t = {2 alpha}: orbit point
    CHECK_THROWS_AS(fit_constant(ctx, 8, bad, 100, false), std::invalid_argument);
}

TEST_CASE("prop_bound hypotheses and shape") {
    // q = 2 with Q = 640003 >= 4 (10 q)^4 = 640000
    AlphaContext ctx(make_irrational("cf:2,320001+const:1"), 24, 192, 1024);
    auto pb = prop_bound(ctx, 1, 100);
    CHECK(pb.hypotheses_ok);
    CHECK(pb.N_closest == 0.0);
    // n < Q/2: N = 0, middle term (n/q) log(q+1)
    double expect = 2.0 + 100.0 / 2.0 * std::log(3.0) +
                    (100.0 + 640003.0) / 640003.0 * std::log(101.0);
    CHECK(pb.value == doctest::Approx(expect).epsilon(1e-12));

    auto at_Q = prop_bound(ctx, 1, 640003);
    CHECK(at_Q.N_closest == 640003.0);  // middle term vanishes
    CHECK(at_Q.value ==
          doctest::Approx(2.0 + 2.0 * std::log(640004.0)).epsilon(1e-9));

    // golden level fails the Q >= 4(10q)^4 hypothesis
    auto weak = prop_bound(golden(), 4, 100);
    CHECK(!weak.hypotheses_ok);
}

TEST_CASE("window lemmas: zero violations at the constructed level, empty elsewhere") {
    AlphaContext ctx(make_irrational("cf:2,1000000+const:1"), 24, 192, 110000);
    auto rep = verify_window_lemmas(ctx, 1, 40, 0xabc, 60000);
    CHECK(!rep.hypotheses_empty);
    CHECK(rep.small_checked > 0);
    CHECK(rep.small_violations == 0);
    CHECK(rep.large_checked > 0);
    CHECK(rep.large_violations == 0);

    auto empty = verify_window_lemmas(golden(), 4, 10, 1, 1000);
    CHECK(empty.hypotheses_empty);  // golden: Q/(100q) < q at every level
}
