#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "charp/gf.hpp"

namespace charp {

/// Hard cap on ring variables. Elimination adds one variable on top of the
/// user's ring, so job files are limited to kMaxVars - 1.
inline constexpr std::size_t kMaxVars = 16;

/// Exponent vector with cached total degree. Arithmetic is checked: any
/// exponent that would leave 32 bits raises ExponentOverflow.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars);
  static Monomial from_exponents(std::span<const std::uint32_t> exps);
  static Monomial variable(std::size_t nvars, std::size_t i, std::uint32_t power = 1);

  std::size_t nvars() const noexcept { return nvars_; }
  std::uint64_t degree() const noexcept { return degree_; }
  std::uint32_t operator[](std::size_t i) const noexcept { return exps_[i]; }
  std::span<const std::uint32_t> exponents() const noexcept { return {exps_.data(), nvars_}; }
  bool is_one() const noexcept { return degree_ == 0; }

  void set(std::size_t i, std::uint32_t v) noexcept {
    degree_ = degree_ - exps_[i] + v;
    exps_[i] = v;
  }

  bool divides(const Monomial& other) const noexcept {
    for (std::size_t i = 0; i < nvars_; ++i)
      if (exps_[i] > other.exps_[i]) return false;
    return true;
  }
  /// True when the supports are disjoint.
  bool coprime(const Monomial& other) const noexcept {
    for (std::size_t i = 0; i < nvars_; ++i)
      if (exps_[i] != 0 && other.exps_[i] != 0) return false;
    return true;
  }
  /// Index of the single variable in the support, or -1 if the monomial is
  /// not a pure power of one variable.
  int pure_power_variable() const noexcept;

  Monomial operator*(const Monomial& other) const;
  /// this / other; requires other.divides(*this).
  Monomial quotient(const Monomial& other) const noexcept;
  Monomial lcm(const Monomial& other) const noexcept;
  Monomial pow(std::uint64_t n) const;

  friend bool operator==(const Monomial& a, const Monomial& b) noexcept {
    return a.nvars_ == b.nvars_ && a.exps_ == b.exps_;
  }

 private:
  std::array<std::uint32_t, kMaxVars> exps_{};
  std::uint64_t degree_ = 0;
  std::uint8_t nvars_ = 0;
};

class MonomialOrder {
 public:
  enum class Kind { Lex, GRevLex, Elimination };

  static MonomialOrder lex() { return MonomialOrder(Kind::Lex, 0); }
  static MonomialOrder grevlex() { return MonomialOrder(Kind::GRevLex, 0); }
  /// The first `block` variables are eliminated: grevlex on them first, ties
  /// broken by grevlex on the remaining variables.
  static MonomialOrder elimination(std::size_t block) { return MonomialOrder(Kind::Elimination, block); }

  Kind kind() const noexcept { return kind_; }
  std::size_t block() const noexcept { return block_; }

  /// Three-way comparison: negative if a < b.
  int compare(const Monomial& a, const Monomial& b) const noexcept;
  bool less(const Monomial& a, const Monomial& b) const noexcept { return compare(a, b) < 0; }

  std::string name() const;

  friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;

 private:
  MonomialOrder(Kind kind, std::size_t block) : kind_(kind), block_(block) {}
  Kind kind_;
  std::size_t block_;
};

/// F_p[x_1..x_n] with a fixed monomial order. Shared immutably between all
/// polynomials that live in it.
class PolyRing {
 public:
  PolyRing(PrimeField field, std::vector<std::string> vars, MonomialOrder order);

  const PrimeField& field() const noexcept { return field_; }
  std::size_t nvars() const noexcept { return vars_.size(); }
  const std::vector<std::string>& vars() const noexcept { return vars_; }
  const MonomialOrder& order() const noexcept { return order_; }

  /// Index of a variable name, or -1.
  int var_index(std::string_view name) const noexcept;

  bool compatible(const PolyRing& other) const noexcept {
    return field_ == other.field_ && vars_.size() == other.vars_.size() && order_ == other.order_;
  }

 private:
  PrimeField field_;
  std::vector<std::string> vars_;
  MonomialOrder order_;
};

using RingPtr = std::shared_ptr<const PolyRing>;

RingPtr make_ring(PrimeField field, std::vector<std::string> vars,
                  MonomialOrder order = MonomialOrder::grevlex());
RingPtr with_order(const RingPtr& ring, MonomialOrder order);

struct Term {
  Fp coeff;
  Monomial mono;

  friend bool operator==(const Term&, const Term&) = default;
};

/// Sparse polynomial: terms strictly descending in the ring order, no zero
/// coefficients. The zero polynomial has no terms.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}

  static Polynomial constant(RingPtr ring, Fp c);
  static Polynomial one(RingPtr ring) { return constant(ring, Fp{1}); }
  static Polynomial variable(RingPtr ring, std::size_t i);
  static Polynomial monomial(RingPtr ring, Fp c, Monomial m);
  /// Sorts, merges duplicates and drops zeros.
  static Polynomial from_terms(RingPtr ring, std::vector<Term> terms);

  const RingPtr& ring() const noexcept { return ring_; }
  const PrimeField& field() const noexcept { return ring_->field(); }
  std::span<const Term> terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  const Term& lead() const noexcept { return terms_.front(); }
  const Monomial& lead_monomial() const noexcept { return terms_.front().mono; }
  Fp lead_coeff() const noexcept { return terms_.front().coeff; }
  std::uint64_t total_degree() const noexcept;

  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator-(const Polynomial& other) const;
  Polynomial operator-() const;
  Polynomial operator*(const Polynomial& other) const;
  Polynomial scale(Fp c) const;
  Polynomial mul_term(Fp c, const Monomial& m) const;
  /// this - c * m * g, fused.
  Polynomial sub_mul_term(Fp c, const Monomial& m, const Polynomial& g) const;
  Polynomial monic() const;

  /// f^n by repeated squaring.
  Polynomial pow(std::uint64_t n) const;

  Fp evaluate(std::span<const Fp> point) const;
  Polynomial derivative(std::size_t var) const;
  /// Substitutes x_i -> x_i + shift_i.
  Polynomial translate(std::span<const Fp> shift) const;
  /// Re-embeds into `target`, sending variable i to target variable var_map[i].
  Polynomial map_to(const RingPtr& target, std::span<const std::size_t> var_map) const;

  std::string to_string() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) noexcept { return a.terms_ == b.terms_; }

 private:
  Polynomial(RingPtr ring, std::vector<Term> sorted_terms)
      : ring_(std::move(ring)), terms_(std::move(sorted_terms)) {}

  RingPtr ring_;
  std::vector<Term> terms_;
};

/// Grammar: expr := term (('+'|'-') term)*; term := factor ('*' factor)*;
/// factor := INT | VAR | factor '^' INT | '(' expr ')'. Integer literals are
/// reduced mod p. Throws SyntaxError (with position) or UnknownVariable.
Polynomial parse_poly(std::string_view src, const RingPtr& ring);

/// Number of monomials in the box prod_i [0, b_i).
std::uint64_t monomial_count_box(std::span<const std::uint64_t> bounds) noexcept;

std::uint64_t checked_pow(std::uint64_t base, std::uint32_t exp);

}  // namespace charp
