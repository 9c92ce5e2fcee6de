#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <vector>

#include <boost/rational.hpp>

#include "charp/budget.hpp"
#include "charp/poly.hpp"

namespace charp {

using Rational = boost::rational<std::int64_t>;

// ---------------------------------------------------------------------------
// Groebner engine
// ---------------------------------------------------------------------------

/// Reduced Groebner basis (monic, sorted by leading monomial descending) of
/// the ideal generated by `gens` in their common ring's order. Buchberger
/// with the normal selection strategy and the Gebauer-Moeller criteria.
std::vector<Polynomial> reduced_groebner_basis(std::span<const Polynomial> gens, const Budget& budget = {});

/// Fully reduced remainder of f modulo `basis` (any finite set; unique only
/// when `basis` is a Groebner basis).
Polynomial reduce(const Polynomial& f, std::span<const Polynomial> basis);

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g);

/// Buchberger certificate: every S-polynomial reduces to zero.
bool s_pairs_reduce_to_zero(std::span<const Polynomial> basis);

/// Monic, no leading monomial divides another, tails fully reduced.
bool is_reduced_basis(std::span<const Polynomial> basis);

/// f / g when g divides f exactly; throws InvalidArgument otherwise.
Polynomial exact_divide(const Polynomial& f, const Polynomial& g);

// ---------------------------------------------------------------------------
// Ideals
// ---------------------------------------------------------------------------

class Ideal {
 public:
  Ideal() = default;
  Ideal(RingPtr ring, std::vector<Polynomial> gens);

  static Ideal zero(RingPtr ring) { return Ideal(std::move(ring), {}); }
  static Ideal unit(RingPtr ring);
  /// (x_1, ..., x_n)
  static Ideal maximal_at_origin(RingPtr ring);
  /// (x_1 - a_1, ..., x_n - a_n)
  static Ideal maximal_at(RingPtr ring, std::span<const Fp> point);
  /// (x_1^q, ..., x_n^q)
  static Ideal frobenius_box(RingPtr ring, std::uint64_t q);

  const RingPtr& ring() const noexcept { return ring_; }
  std::span<const Polynomial> gens() const noexcept { return gens_; }

  /// Reduced Groebner basis in the ring's order; computed once and shared by
  /// copies. The first caller's budget governs the computation.
  const std::vector<Polynomial>& groebner_basis(const Budget& budget = {}) const;
  bool has_groebner_basis() const noexcept;

  Polynomial normal_form(const Polynomial& f, const Budget& budget = {}) const;
  bool contains(const Polynomial& f, const Budget& budget = {}) const;
  bool contains(const Ideal& other, const Budget& budget = {}) const;
  bool is_unit(const Budget& budget = {}) const;
  /// True when every generator is zero.
  bool is_zero() const noexcept;

  /// Minimal generators of the leading-term ideal.
  std::vector<Monomial> leading_monomials(const Budget& budget = {}) const;

  std::string to_string() const;

 private:
  struct Cache {
    std::mutex mu;
    bool ready = false;
    std::vector<Polynomial> basis;
  };

  RingPtr ring_;
  std::vector<Polynomial> gens_;
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

/// The same ideal re-expressed in `order` with its basis computed.
Ideal groebner(const Ideal& I, MonomialOrder order, const Budget& budget = {});

Ideal operator+(const Ideal& I, const Ideal& J);
Ideal operator*(const Ideal& I, const Ideal& J);
Ideal power(const Ideal& I, std::uint64_t n);
/// Generators translated by x -> x + shift (moves `shift` to the origin when
/// applied with the point's coordinates).
Ideal translate(const Ideal& I, std::span<const Fp> shift);

/// Mutual containment.
bool same_ideal(const Ideal& I, const Ideal& J, const Budget& budget = {});

/// I ∩ J by elimination of an auxiliary variable t from tI + (1-t)J.
Ideal intersect(const Ideal& I, const Ideal& J, const Budget& budget = {});
/// (I : g) = (I ∩ (g)) / g.
Ideal colon(const Ideal& I, const Polynomial& g, const Budget& budget = {});
/// (I : J) = ∩_i (I : g_i).
Ideal colon(const Ideal& I, const Ideal& J, const Budget& budget = {});

/// I^{[q]} = (g^q : g in gens(I)); q must be a power of the characteristic.
Ideal bracket_power(const Ideal& I, std::uint64_t q);
/// q-th power of f computed term by term (valid because q is a power of p).
Polynomial frobenius_power(const Polynomial& f, std::uint64_t q);
/// e with p^e = q, or throws NotAPowerOfP.
std::uint32_t log_p(std::uint64_t q, std::uint32_t p);

/// dim_F S/J; nullopt when infinite.
std::optional<std::uint64_t> length(const Ideal& J, const Budget& budget = {});

struct StandardMonomialBasis {
  std::vector<Monomial> monomials;
  bool is_finite = false;
};
StandardMonomialBasis standard_monomials(const Ideal& J, const Budget& budget = {});

/// Krull dimension of S/I from the leading-term ideal: the size of a largest
/// variable set containing the support of no leading monomial.
int krull_dim(const Ideal& I, const Budget& budget = {});

struct HilbertSamuelResult {
  Rational multiplicity;
  bool exact = false;
  int dim = 0;
  std::vector<std::uint64_t> lengths;  // lambda(R/m^n R) for n = 1..n_used
};

/// Hilbert-Samuel multiplicity of (S/I) at a rational maximal ideal m ⊇ I,
/// read off the d-th difference of n -> lambda(R/m^n R). Throws
/// NotStabilized when the difference table is not constant at the tail.
HilbertSamuelResult hilbert_samuel(const Ideal& I, const Ideal& m, int n_max = 8, const Budget& budget = {});

/// Coordinates of a maximal ideal (x_1 - a_1, ..., x_n - a_n), if it is one.
std::optional<std::vector<Fp>> rational_point_of(const Ideal& m, const Budget& budget = {});

}  // namespace charp
