#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bishoplab/convergents.hpp>
#include <bishoplab/errors.hpp>
#include <bishoplab/growth.hpp>
#include <bishoplab/registry.hpp>

#include <cmath>

using namespace bishoplab;

TEST_CASE("golden denominators are Fibonacci") {
    auto pq = make_irrational("golden");
    auto t = convergents(pq, 6);
    long expect[] = {1, 1, 2, 3, 5, 8, 13};
    for (size_t j = 0; j <= 6; ++j) CHECK(t.q(j) == expect[j]);
}

TEST_CASE("sqrt2-1 denominators follow the Pell recurrence") {
    auto pq = make_irrational("sqrt2m1");
    auto t = convergents(pq, 4);
    long expect[] = {1, 2, 5, 12, 29};
    for (size_t j = 0; j <= 4; ++j) CHECK(t.q(j) == expect[j]);
}

TEST_CASE("determinant identity holds exactly at every depth for every registry key") {
    for (const auto& key : registry_keys()) {
        auto pq = make_irrational(key);
        size_t d = std::min<size_t>(34, pq.max_depth());
        auto t = convergents(pq, d);
        for (size_t j = 1; j <= d; ++j) {
            INFO(key, " j=", j);
            CHECK(t.determinant_ok(j));
            BigInt g;
            mpz_gcd(g.get_mpz_t(), t.p(j).get_mpz_t(), t.q(j).get_mpz_t());
            CHECK(g == 1);
            CHECK(t.q(j) > t.q(j - 1) - (j == 1 ? 1 : 0));  // strictly increasing for j >= 2
        }
    }
}

TEST_CASE("gap inequality is a theorem: passes for every computed level") {
    for (const auto& key : registry_keys()) {
        auto pq = make_irrational(key);
        size_t d = std::min<size_t>(33, pq.max_depth());
        auto t = convergents(pq, d);
        for (size_t j = 1; j + 3 <= d; ++j) {
            INFO(key, " j=", j);
            CHECK(check_convergent_gap(t, j).pass);
        }
    }
}

TEST_CASE("golden (q,Q)=(5,8) gap: <5 alpha> ~ 0.0902 in (1/16, 1/8)") {
    auto g = check_convergent_gap(make_irrational("golden"), 4);
    CHECK(g.pass);
    CHECK(g.bound_lo == BigRat(1, 16));
    CHECK(g.bound_hi == BigRat(1, 8));
    // exact rational enclosure must bracket |5 alpha - 3| = 0.09016994...
    double truth = std::fabs(5.0 * 0.6180339887498949 - 3.0);
    CHECK(mpq_get_d(g.dist_lo.get_mpq_t()) <= truth);
    CHECK(mpq_get_d(g.dist_hi.get_mpq_t()) >= truth);
}

TEST_CASE("sqrt2m1 (q,Q)=(2,5) gap: <2 alpha> ~ 0.1716 in (1/10, 1/5)") {
    auto g = check_convergent_gap(make_irrational("sqrt2m1"), 1);
    CHECK(g.pass);
    CHECK(g.bound_lo == BigRat(1, 10));
    CHECK(g.bound_hi == BigRat(1, 5));
    double truth = std::fabs(2.0 * 0.41421356237309503 - 1.0);
    CHECK(mpq_get_d(g.dist_lo.get_mpq_t()) <= truth);
    CHECK(mpq_get_d(g.dist_hi.get_mpq_t()) >= truth);
}

TEST_CASE("alpha_approx certifies against the convergent oracle") {
    auto pq = make_irrational("golden");
    FixedReal a = alpha_approx(pq, 64);
    // oracle: p_J/q_J with q_J^2 > 2^{P+1}
    auto t = convergents(pq, 60);
    size_t J = 0;
    for (size_t j = 0; j <= 60; ++j)
        if (t.q(j) * t.q(j) > (BigInt(1) << 65)) {
            J = j;
            break;
        }
    REQUIRE(J > 0);
    BigRat oracle(t.p(J), t.q(J));
    oracle.canonicalize();
    BigRat diff = a.to_rational() - oracle;
    BigRat tol(BigInt(4), BigInt(1) << 64);
    tol.canonicalize();
    CHECK(abs(diff) < tol);
    CHECK(a.to_double() == doctest::Approx(0.6180339887498949).epsilon(1e-15));
}

TEST_CASE("first-convergent enclosure for a huge leading quotient") {
    PartialQuotients pq({BigInt(1000000)}, QuotientRule::constant(BigInt(1)), "spike");
    FixedReal a = alpha_approx(pq, 64);
    BigRat v = a.to_rational();
    CHECK(v > BigRat(1, 1000001));
    CHECK(v < BigRat(1, 1000000));
}

TEST_CASE("nested precision: doubling P never changes certified leading bits") {
    for (const char* key : {"golden", "emin2", "liouville"}) {
        auto pq = make_irrational(key);
        FixedReal a64 = alpha_approx(pq, 64);
        FixedReal a128 = alpha_approx(pq, 128);
        BigRat d = a64.to_rational() - a128.to_rational();
        BigRat tol(BigInt(4), BigInt(1) << 64);
        tol.canonicalize();
        INFO(key);
        CHECK(abs(d) < tol);
    }
}

TEST_CASE("generator exhaustion is an explicit error") {
    PartialQuotients pq({BigInt(3), BigInt(7)}, QuotientRule::none(), "short");
    CHECK_THROWS_AS(convergents(pq, 5), generator_exhausted);
    CHECK_THROWS_AS(PartialQuotients({}, QuotientRule::none(), "empty"), std::invalid_argument);
    CHECK_THROWS_AS(PartialQuotients({BigInt(0)}, QuotientRule::none(), "zero"),
                    std::invalid_argument);
}

TEST_CASE("growth construction hits its target within O(1)") {
    // g(q) = sqrt(q), depth 5: |log q_{j+1} - sqrt(q_j)| <= 1 per level
    GrowthResult r = construct_with_growth(GrowthRule::power(1.0, 0.5), 5, BigInt(2));
    REQUIRE(r.target_log.size() == 4);
    for (size_t i = 0; i < r.target_log.size(); ++i) {
        INFO("level ", i);
        CHECK(std::fabs(r.achieved_log[i] - r.target_log[i]) <= 1.0);
    }
    // recompute log q_{j+1} from the exact table
    auto t = convergents(r.pq, 5);
    for (size_t i = 0; i < 4; ++i)
        CHECK(r.achieved_log[i] == doctest::Approx(log_big(t.q(i + 2))).epsilon(1e-12));
}

TEST_CASE("zero growth rule degenerates to bounded type") {
    GrowthResult r = construct_with_growth(GrowthRule::zero(), 8, BigInt(2));
    for (size_t j = 2; j <= 8; ++j) CHECK(r.pq.a(j) == 1);
}

TEST_CASE("growth beyond the bigint budget is an explicit error") {
    CHECK_THROWS_AS(construct_with_growth(GrowthRule::qlog2(), 6, BigInt(2)), budget_error);
}

TEST_CASE("qlog2 construction reaches the analyzed levels") {
    GrowthResult r = construct_with_growth(GrowthRule::qlog2(), 4, BigInt(2));
    auto t = convergents(r.pq, 4);
    CHECK(t.q(2) == 5);
    CHECK(t.q(3) == 32);
    CHECK(t.q(4) == 4294967301L);  // 2^32 + 5
}

TEST_CASE("liouville registry key certifies 34 partial quotients") {
    auto pq = make_irrational("liouville");
    CHECK(pq.max_depth() >= 34);
    auto t = convergents(pq, 34);
    for (size_t j = 1; j <= 34; ++j) CHECK(t.determinant_ok(j));
    // alpha = 0.110001000000000000000001...
    FixedReal a = alpha_approx(pq, 64);
    CHECK(a.to_double() == doctest::Approx(0.11000100000000000000000100).epsilon(1e-15));
}

TEST_CASE("certified decimal expansion stops when precision is exhausted") {
    auto pq = make_irrational("decimal:0.718281828459045235360287");
    // e-2 to 24 digits: the certified prefix must agree with the e-pattern
    auto epq = make_irrational("emin2");
    size_t d = std::min<size_t>(pq.max_depth(), 12);
    for (size_t j = 1; j <= d; ++j) {
        INFO("j=", j);
        CHECK(pq.a(j) == epq.a(j));
    }
    CHECK(pq.max_depth() < 40);  // finite literal cannot certify forever
}

TEST_CASE("denominators of alpha and 1-alpha coincide up to a unit index shift") {
    for (const char* key : {"sqrt2m1", "bronze", "period23", "golden"}) {
        auto pq = make_irrational(key);
        size_t depth = 20;
        auto t = convergents(pq, depth);
        auto cpq = complement_pq(pq, depth);
        auto ct = convergents(cpq, depth);
        // a_1 >= 2: q'_{j+1} = q_j; a_1 == 1: q'_j = q_{j+1}
        bool shift_up = pq.a(1) >= 2;
        for (size_t j = 2; j + 1 <= depth; ++j) {
            INFO(key, " j=", j);
            if (shift_up)
                CHECK(ct.q(j + 1) == t.q(j));
            else
                CHECK(ct.q(j) == t.q(j + 1));
        }
    }
}

TEST_CASE("registry has at least 10 depth-30 irrationals and rejects junk") {
    int count = 0;
    for (const auto& key : registry_keys()) {
        auto pq = make_irrational(key);
        if (pq.max_depth() >= 30) ++count;
    }
    CHECK(count >= 10);
    CHECK_THROWS_AS(make_irrational("nonsense"), std::invalid_argument);
}
