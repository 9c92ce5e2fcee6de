#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "charp/error.hpp"
#include "charp/finv.hpp"

namespace charp::testing {

inline RingPtr ring(std::uint32_t p, std::vector<std::string> vars, MonomialOrder order = MonomialOrder::grevlex()) {
  return make_ring(PrimeField(p), std::move(vars), order);
}

inline Ideal ideal(const RingPtr& r, std::initializer_list<const char*> gens) {
  std::vector<Polynomial> g;
  for (const char* s : gens) g.push_back(parse_poly(s, r));
  return Ideal(r, std::move(g));
}

inline Polynomial poly(const RingPtr& r, const char* s) { return parse_poly(s, r); }

inline std::vector<Fp> pt(std::initializer_list<std::uint32_t> c) {
  std::vector<Fp> v;
  for (auto x : c) v.push_back(Fp{x});
  return v;
}

inline std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

inline LocalRingAtPoint origin(std::uint32_t p, std::vector<std::string> vars, std::initializer_list<const char*> gens) {
  const auto r = ring(p, std::move(vars));
  return LocalRingAtPoint::at_origin(ideal(r, gens));
}

}  // namespace charp::testing
