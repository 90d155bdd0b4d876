#include "bishoplab/registry.hpp"

#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "bishoplab/errors.hpp"
#include "bishoplab/growth.hpp"

namespace bishoplab {

std::vector<BigInt> gauss_expand_interval(BigRat lo, BigRat hi, size_t max_depth) {
    if (!(lo < hi) || lo < 0 || hi > 1)
        throw std::invalid_argument("gauss_expand_interval: need 0 <= lo < hi <= 1");
    std::vector<BigInt> out;
    while (out.size() < max_depth) {
        if (sgn(lo) <= 0) break;  // endpoint hit an integer: certification ends
        BigRat inv_hi = 1 / hi, inv_lo = 1 / lo;
        BigInt f_hi, f_lo;
        mpz_fdiv_q(f_hi.get_mpz_t(), inv_hi.get_num_mpz_t(), inv_hi.get_den_mpz_t());
        mpz_fdiv_q(f_lo.get_mpz_t(), inv_lo.get_num_mpz_t(), inv_lo.get_den_mpz_t());
        if (f_hi != f_lo) break;  // quotient not certified by the interval
        out.push_back(f_hi);
        BigRat nlo = inv_hi - BigRat(f_hi);
        BigRat nhi = inv_lo - BigRat(f_hi);
        lo = nlo;
        hi = nhi;
    }
    return out;
}

BigRat liouville_truncation(int terms) {
    BigRat sum(0);
    BigInt fact(1);
    for (int j = 1; j <= terms; ++j) {
        fact *= j;
        BigInt den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10,
                      static_cast<unsigned long>(fact.get_ui()));
        BigRat term(BigInt(1), den);
        term.canonicalize();
        sum += term;
    }
    return sum;
}

namespace {

PartialQuotients liouville_decimal(size_t depth) {
    // alpha = sum 10^{-j!}; the K-term truncation encloses alpha within
    // 2*10^{-(K+1)!}, so the common Gauss prefix of the interval is certified.
    for (int K = 5; K <= 9; ++K) {
        BigRat lo = liouville_truncation(K);
        BigInt next_fact(1);
        for (int j = 1; j <= K + 1; ++j) next_fact *= j;
        BigInt den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, static_cast<unsigned long>(next_fact.get_ui()));
        BigRat tail(BigInt(2), den);
        tail.canonicalize();
        BigRat hi = lo + tail;
        auto quot = gauss_expand_interval(lo, hi, depth);
        if (quot.size() >= depth) {
            quot.resize(depth);
            return PartialQuotients(std::move(quot), QuotientRule::none(), "liouville");
        }
    }
    throw precision_error("liouville: could not certify " + std::to_string(depth) +
                          " partial quotients with K <= 9 truncations");
}

PartialQuotients decimal_key(const std::string& digits, size_t depth) {
    // certified expansion of a decimal literal "0.d1d2..." read as the
    // interval [value, value + ulp]
    auto dot = digits.find('.');
    std::string frac = dot == std::string::npos ? digits : digits.substr(dot + 1);
    std::string ip = dot == std::string::npos ? "0" : digits.substr(0, dot);
    if (ip != "0" || frac.empty())
        throw std::invalid_argument("decimal: expects a literal in (0,1), got " + digits);
    BigInt num(frac, 10);
    BigInt den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
    BigRat lo(num, den), hi(num + 1, den);
    lo.canonicalize();
    hi.canonicalize();
    auto quot = gauss_expand_interval(lo, hi, depth);
    if (quot.empty())
        throw precision_error("decimal: no partial quotient certified; literal too short");
    return PartialQuotients(std::move(quot), QuotientRule::none(), "decimal:" + digits);
}

std::vector<BigInt> parse_int_list(const std::string& s) {
    std::vector<BigInt> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) out.emplace_back(tok, 10);
    return out;
}

PartialQuotients cf_key(const std::string& spec) {
    // cf:a1,a2,...[+const:c|+periodic:p1,p2,...|+arith:c0,c1]
    std::string body = spec;
    QuotientRule rule = QuotientRule::none();
    auto plus = body.find('+');
    if (plus != std::string::npos) {
        std::string rspec = body.substr(plus + 1);
        body = body.substr(0, plus);
        if (rspec.rfind("const:", 0) == 0)
            rule = QuotientRule::constant(BigInt(rspec.substr(6), 10));
        else if (rspec.rfind("periodic:", 0) == 0)
            rule = QuotientRule::periodic(parse_int_list(rspec.substr(9)));
        else if (rspec.rfind("arith:", 0) == 0) {
            auto v = parse_int_list(rspec.substr(6));
            if (v.size() != 2) throw std::invalid_argument("arith rule needs c0,c1");
            rule = QuotientRule::arithmetic(v[0], v[1]);
        } else
            throw std::invalid_argument("unknown cf continuation: " + rspec);
    }
    return PartialQuotients(parse_int_list(body), rule, "cf:" + spec);
}

PartialQuotients growth_key(const std::string& spec) {
    // growth:<rule>[@a1], rule in {qlog2, sqrt, zero, pow:<e>[:<c>]}
    std::string body = spec;
    BigInt a1(2);
    auto at = body.find('@');
    if (at != std::string::npos) {
        a1 = BigInt(body.substr(at + 1), 10);
        body = body.substr(0, at);
    }
    GrowthRule rule;
    if (body == "qlog2")
        rule = GrowthRule::qlog2();
    else if (body == "sqrt")
        rule = GrowthRule::power(1.0, 0.5);
    else if (body == "zero")
        rule = GrowthRule::zero();
    else if (body.rfind("pow:", 0) == 0) {
        auto rest = body.substr(4);
        auto colon = rest.find(':');
        double e = std::stod(colon == std::string::npos ? rest : rest.substr(0, colon));
        double c = colon == std::string::npos ? 1.0 : std::stod(rest.substr(colon + 1));
        rule = GrowthRule::power(c, e);
    } else
        throw std::invalid_argument("unknown growth rule: " + body);
    size_t d = growth_feasible_depth(rule, a1, 24);
    GrowthResult g = construct_with_growth(rule, d, a1);
    // constant-1 precision padding past the budget-capped faithful part
    std::vector<BigInt> prefix;
    for (size_t j = 1; j <= d; ++j) prefix.push_back(g.pq.a(j));
    return PartialQuotients(std::move(prefix), QuotientRule::constant(BigInt(1)),
                            g.pq.label(), d);
}

}  // namespace

PartialQuotients make_irrational(const std::string& key) {
    static std::mutex mu;
    static std::map<std::string, PartialQuotients> memo;
    {
        std::lock_guard<std::mutex> lk(mu);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
    }

    PartialQuotients pq = [&]() -> PartialQuotients {
        if (key == "golden")
            return PartialQuotients({}, QuotientRule::constant(BigInt(1)), "golden");
        if (key == "sqrt2m1")
            return PartialQuotients({}, QuotientRule::constant(BigInt(2)), "sqrt2m1");
        if (key == "sqrt3m1")
            return PartialQuotients({}, QuotientRule::periodic({BigInt(1), BigInt(2)}), "sqrt3m1");
        if (key == "bronze")
            return PartialQuotients({}, QuotientRule::constant(BigInt(3)), "bronze");
        if (key == "const4")
            return PartialQuotients({}, QuotientRule::constant(BigInt(4)), "const4");
        if (key == "const5")
            return PartialQuotients({}, QuotientRule::constant(BigInt(5)), "const5");
        if (key == "metallic6")
            return PartialQuotients({}, QuotientRule::constant(BigInt(6)), "metallic6");
        if (key == "emin2")
            return PartialQuotients({}, QuotientRule::e_pattern(), "emin2");
        if (key == "linear")
            return PartialQuotients({}, QuotientRule::arithmetic(BigInt(0), BigInt(1)), "linear");
        if (key == "period23")
            return PartialQuotients({}, QuotientRule::periodic({BigInt(2), BigInt(3)}), "period23");
        if (key == "liouville") return liouville_decimal(34);
        if (key.rfind("growth:", 0) == 0) return growth_key(key.substr(7));
        if (key.rfind("cf:", 0) == 0) return cf_key(key.substr(3));
        if (key.rfind("decimal:", 0) == 0) return decimal_key(key.substr(8), 64);
        throw std::invalid_argument("unknown irrational key: " + key);
    }();

    std::lock_guard<std::mutex> lk(mu);
    memo.emplace(key, pq);
    return pq;
}

std::vector<std::string> registry_keys() {
    return {"golden",    "sqrt2m1", "sqrt3m1", "bronze", "const4",  "const5",
            "metallic6", "emin2",   "linear",  "period23", "liouville"};
}

PartialQuotients complement_pq(const PartialQuotients& pq, size_t depth) {
    // [0;a1,a2,...] -> 1 - alpha = [0;1,a1-1,a2,...] (a1 >= 2)
    //                           or [0;1+a2,a3,...]    (a1 == 1)
    std::vector<BigInt> out;
    BigInt a1 = pq.a(1);
    if (a1 >= 2) {
        out.push_back(BigInt(1));
        out.push_back(a1 - 1);
        for (size_t j = 2; j <= depth; ++j) out.push_back(pq.a(j));
    } else {
        out.push_back(BigInt(1) + pq.a(2));
        for (size_t j = 3; j <= depth + 1; ++j) out.push_back(pq.a(j));
    }
    return PartialQuotients(std::move(out), QuotientRule::none(),
                            "complement(" + pq.label() + ")");
}

}  // namespace bishoplab
