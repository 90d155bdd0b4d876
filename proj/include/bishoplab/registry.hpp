#ifndef BISHOPLAB_REGISTRY_HPP
#define BISHOPLAB_REGISTRY_HPP

#include <string>
#include <vector>

#include "bishoplab/partial_quotients.hpp"

namespace bishoplab {

// Named irrationals addressable from the CLI by string key.
//
//   golden sqrt2m1 sqrt3m1 bronze const4 const5 metallic6 emin2 linear
//   period23 liouville
//   growth:<rule>[@a1]      rule in {qlog2, sqrt, pow:<e>, zero}
//   cf:a1,a2,...[+const:c|+periodic:p1,p2,...|+arith:c0,c1]
//   decimal:<digits>        certified Gauss expansion of a decimal literal
PartialQuotients make_irrational(const std::string& key);

// The named keys (excluding the parametric growth:/cf:/decimal: forms).
std::vector<std::string> registry_keys();

// Certified Gauss-map expansion of an interval (lo, hi): emits partial
// quotients while both endpoints agree, stopping when precision is
// exhausted.  Returns the certified prefix.
std::vector<BigInt> gauss_expand_interval(BigRat lo, BigRat hi, size_t max_depth);

// Sum of 10^{-j!}, j = 1..terms, as an exact rational.
BigRat liouville_truncation(int terms);

// Partial quotients of alpha with the cf of 1 - alpha; denominators coincide
// up to a unit index shift (used as a testable property, not an axiom).
PartialQuotients complement_pq(const PartialQuotients& pq, size_t depth);

}  // namespace bishoplab

#endif
