#pragma once

// Golden corpus and randomized property suites. The CLI runs them as
// `charp selftest`; the test suite reuses the same checks with more instances.

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "charp/ideal.hpp"

namespace charp::selftest {

struct CheckResult {
  std::string name;
  bool passed = true;
  int instances = 0;
  std::string detail;  // first counterexample, or a summary
};

/// Seeded generators for small random instances.
class RandomInstances {
 public:
  explicit RandomInstances(std::uint64_t seed) : rng_(seed) {}

  std::uint64_t below(std::uint64_t n) { return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng_); }
  std::uint32_t prime(std::initializer_list<std::uint32_t> choices);
  Monomial monomial(std::size_t nvars, std::uint32_t max_exp);
  Fp element(const PrimeField& F) { return Fp{static_cast<std::uint32_t>(below(F.characteristic()))}; }
  /// Up to `max_terms` terms, exponents <= max_exp, never the constant term
  /// when `in_maximal` is set.
  Polynomial polynomial(const RingPtr& ring, int max_terms, std::uint32_t max_exp, bool in_maximal = false);
  Ideal ideal(const RingPtr& ring, int max_gens, int max_terms, std::uint32_t max_exp, bool in_maximal = false);
  std::vector<Fp> point(const RingPtr& ring);
  RingPtr ring(std::uint32_t p, std::size_t nvars, MonomialOrder order = MonomialOrder::grevlex());

 private:
  std::mt19937_64 rng_;
};

CheckResult order_axioms(std::uint64_t seed, int count);
CheckResult ring_axioms(std::uint64_t seed, int count);
CheckResult freshmans_dream(std::uint64_t seed, int count);
CheckResult bracket_power_laws(std::uint64_t seed, int count);
CheckResult sandwich_inclusions(std::uint64_t seed, int count);
CheckResult groebner_certificates(std::uint64_t seed, int count);
CheckResult colon_property(std::uint64_t seed, int count);
CheckResult node_additivity(std::uint64_t seed, int count);

std::vector<CheckResult> property_suites(std::uint64_t seed, int count);
std::vector<CheckResult> golden_corpus();

/// Prints one PASS/FAIL line per check; returns 0 when everything passes.
int run(std::ostream& out, int count = 50, std::uint64_t seed = 20240601);

}  // namespace charp::selftest
