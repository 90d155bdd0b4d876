#include "bishoplab/convergents.hpp"

#include <stdexcept>

#include "bishoplab/errors.hpp"

namespace bishoplab {

bool ConvergentTable::determinant_ok(size_t j) const {
    if (j == 0 || j > depth()) return false;
    BigInt det = p(j) * q(j - 1) - p(j - 1) * q(j);
    return (j % 2 == 1) ? det == 1 : det == -1;
}

ConvergentTable convergents(const PartialQuotients& pq, size_t depth) {
    if (depth < 1) throw std::invalid_argument("convergents: depth >= 1 required");
    std::vector<ConvergentRow> rows;
    rows.reserve(depth + 1);
    rows.push_back({0, BigInt(0), BigInt(1)});
    BigInt a1 = pq.a(1);
    rows.push_back({1, BigInt(1), a1});
    for (size_t j = 2; j <= depth; ++j) {
        BigInt aj = pq.a(j);
        rows.push_back({j, aj * rows[j - 1].p + rows[j - 2].p, aj * rows[j - 1].q + rows[j - 2].q});
    }
    return ConvergentTable(std::move(rows));
}

std::pair<BigRat, BigRat> alpha_enclosure(const ConvergentTable& t, size_t j) {
    if (j + 1 > t.depth()) throw std::invalid_argument("alpha_enclosure: need depth j+1");
    BigRat a(t.p(j), t.q(j)), b(t.p(j + 1), t.q(j + 1));
    a.canonicalize();
    b.canonicalize();
    if (a < b) return {a, b};
    return {b, a};
}

FixedReal alpha_approx(const PartialQuotients& pq, long prec_bits) {
    if (prec_bits < 64) throw std::invalid_argument("alpha_approx: prec >= 64 bits required");
    // deepen until q_j q_{j+1} >= 2^(prec+2): enclosure width 1/(q_j q_{j+1})
    // plus one rounding ulp stays under 2^-prec
    BigInt target = BigInt(1) << (prec_bits + 2);
    size_t depth = 8;
    for (;;) {
        size_t avail = std::min<size_t>(depth, pq.max_depth());
        if (avail < 2)
            throw precision_error("alpha_approx: prefix too short for any enclosure (" +
                                  pq.label() + ")");
        ConvergentTable t = convergents(pq, avail);
        for (size_t j = 0; j + 1 <= t.depth(); ++j) {
            if (t.q(j) * t.q(j + 1) >= target)
                return FixedReal::from_ratio(t.p(j + 1), t.q(j + 1), prec_bits);
        }
        if (avail == pq.max_depth())
            throw precision_error("alpha_approx: prefix of '" + pq.label() +
                                  "' exhausted before reaching 2^-" + std::to_string(prec_bits));
        depth *= 2;
    }
}

GapCheck check_convergent_gap(const PartialQuotients& pq, size_t j) {
    if (j < 1) throw std::invalid_argument("check_convergent_gap: j >= 1 required");
    size_t depth = j + 3;
    if (pq.max_depth() < depth)
        throw precision_error("check_convergent_gap: need convergents to depth " +
                              std::to_string(depth));
    return check_convergent_gap(convergents(pq, depth), j);
}

GapCheck check_convergent_gap(const ConvergentTable& t, size_t j) {
    if (j < 1) throw std::invalid_argument("check_convergent_gap: j >= 1 required");
    if (t.depth() < j + 3)
        throw precision_error("check_convergent_gap: table depth " + std::to_string(t.depth()) +
                              " < " + std::to_string(j + 3));
    // The enclosure from levels (j+2, j+3) has endpoints strictly interior
    // to ((2Q)^-1, Q^-1); the level-(j+1) endpoint would sit exactly on the
    // upper bound by the determinant identity.
    auto [lo, hi] = alpha_enclosure(t, j + 2);
    BigRat qj(t.q(j)), pj(t.p(j));
    BigRat d1 = qj * lo - pj;
    BigRat d2 = qj * hi - pj;
    BigRat dist_lo = d1 < d2 ? d1 : d2;
    BigRat dist_hi = d1 < d2 ? d2 : d1;
    if (dist_lo < 0 && dist_hi > 0)
        throw precision_error("check_convergent_gap: sign of q_j alpha - p_j not certified");
    if (dist_hi <= 0) {
        BigRat tmp = dist_lo;
        dist_lo = -dist_hi;
        dist_hi = -tmp;
    }
    GapCheck g;
    g.j = j;
    g.dist_lo = dist_lo;
    g.dist_hi = dist_hi;
    g.bound_lo = BigRat(1, 2 * BigInt(t.q(j + 1)));
    g.bound_lo.canonicalize();
    g.bound_hi = BigRat(1, t.q(j + 1));
    g.bound_hi.canonicalize();
    g.pass = (g.bound_lo < dist_lo) && (dist_hi < g.bound_hi);
    return g;
}

}  // namespace bishoplab
