#include <algorithm>
#include <cctype>
#include <limits>
#include <string>

#include "charp/poly.hpp"

namespace charp {

namespace {

constexpr std::uint64_t kMaxExponent = std::numeric_limits<std::uint32_t>::max();

void check_nvars(std::size_t n) {
  if (n > kMaxVars)
    throw Error(ErrorKind::TooManyVariables,
                std::to_string(n) + " variables requested, limit is " + std::to_string(kMaxVars));
}

// grevlex restricted to variables [lo, hi): degree first, then the last
// differing variable with the smaller exponent wins.
int grevlex_range(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi) noexcept {
  std::uint64_t da = 0, db = 0;
  for (std::size_t i = lo; i < hi; ++i) {
    da += a[i];
    db += b[i];
  }
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i = hi; i-- > lo;)
    if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
  return 0;
}

}  // namespace

Monomial::Monomial(std::size_t nvars) {
  check_nvars(nvars);
  nvars_ = static_cast<std::uint8_t>(nvars);
}

Monomial Monomial::from_exponents(std::span<const std::uint32_t> exps) {
  Monomial m(exps.size());
  for (std::size_t i = 0; i < exps.size(); ++i) m.set(i, exps[i]);
  return m;
}

Monomial Monomial::variable(std::size_t nvars, std::size_t i, std::uint32_t power) {
  Monomial m(nvars);
  m.set(i, power);
  return m;
}

int Monomial::pure_power_variable() const noexcept {
  int found = -1;
  for (std::size_t i = 0; i < nvars_; ++i) {
    if (exps_[i] == 0) continue;
    if (found >= 0) return -1;
    found = static_cast<int>(i);
  }
  return found;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial r(*this);
  for (std::size_t i = 0; i < nvars_; ++i) {
    std::uint64_t e = std::uint64_t{exps_[i]} + other.exps_[i];
    if (e > kMaxExponent) throw Error(ErrorKind::ExponentOverflow, "monomial product exceeds 32-bit exponent");
    r.exps_[i] = static_cast<std::uint32_t>(e);
  }
  r.degree_ = degree_ + other.degree_;
  return r;
}

Monomial Monomial::quotient(const Monomial& other) const noexcept {
  Monomial r(*this);
  for (std::size_t i = 0; i < nvars_; ++i) r.exps_[i] -= other.exps_[i];
  r.degree_ = degree_ - other.degree_;
  return r;
}

Monomial Monomial::lcm(const Monomial& other) const noexcept {
  Monomial r(*this);
  std::uint64_t d = 0;
  for (std::size_t i = 0; i < nvars_; ++i) {
    r.exps_[i] = exps_[i] > other.exps_[i] ? exps_[i] : other.exps_[i];
    d += r.exps_[i];
  }
  r.degree_ = d;
  return r;
}

Monomial Monomial::pow(std::uint64_t n) const {
  Monomial r(*this);
  std::uint64_t d = 0;
  for (std::size_t i = 0; i < nvars_; ++i) {
    if (exps_[i] == 0) continue;
    if (n > kMaxExponent / exps_[i]) throw Error(ErrorKind::ExponentOverflow, "monomial power exceeds 32-bit exponent");
    r.exps_[i] = static_cast<std::uint32_t>(exps_[i] * n);
    d += r.exps_[i];
  }
  r.degree_ = d;
  return r;
}

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const noexcept {
  const std::size_t n = a.nvars();
  switch (kind_) {
    case Kind::Lex:
      for (std::size_t i = 0; i < n; ++i)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
      return 0;
    case Kind::GRevLex:
      if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
      for (std::size_t i = n; i-- > 0;)
        if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
      return 0;
    case Kind::Elimination: {
      const std::size_t k = block_ < n ? block_ : n;
      if (int c = grevlex_range(a, b, 0, k); c != 0) return c;
      return grevlex_range(a, b, k, n);
    }
  }
  return 0;
}

std::string MonomialOrder::name() const {
  switch (kind_) {
    case Kind::Lex: return "lex";
    case Kind::GRevLex: return "grevlex";
    case Kind::Elimination: return "elimination(" + std::to_string(block_) + ")";
  }
  return "?";
}

PolyRing::PolyRing(PrimeField field, std::vector<std::string> vars, MonomialOrder order)
    : field_(field), vars_(std::move(vars)), order_(order) {
  check_nvars(vars_.size());
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    const std::string& v = vars_[i];
    const bool ident = !v.empty() && (std::isalpha(static_cast<unsigned char>(v[0])) || v[0] == '_') &&
                       std::all_of(v.begin(), v.end(), [](char c) {
                         return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
                       });
    if (!ident) throw Error(ErrorKind::InvalidArgument, "'" + v + "' is not a variable name");
    if (std::find(vars_.begin(), vars_.begin() + static_cast<std::ptrdiff_t>(i), v) != vars_.begin() + static_cast<std::ptrdiff_t>(i))
      throw Error(ErrorKind::InvalidArgument, "variable '" + v + "' declared twice");
  }
}

int PolyRing::var_index(std::string_view name) const noexcept {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i] == name) return static_cast<int>(i);
  return -1;
}

RingPtr make_ring(PrimeField field, std::vector<std::string> vars, MonomialOrder order) {
  return std::make_shared<const PolyRing>(field, std::move(vars), order);
}

RingPtr with_order(const RingPtr& ring, MonomialOrder order) {
  if (ring->order() == order) return ring;
  return make_ring(ring->field(), ring->vars(), order);
}

std::uint64_t monomial_count_box(std::span<const std::uint64_t> bounds) noexcept {
  std::uint64_t n = 1;
  for (auto b : bounds) n *= b;
  return n;
}

std::uint64_t checked_pow(std::uint64_t base, std::uint32_t exp) {
  std::uint64_t r = 1;
  for (std::uint32_t i = 0; i < exp; ++i) {
    if (base != 0 && r > std::numeric_limits<std::uint64_t>::max() / base)
      throw Error(ErrorKind::ExponentOverflow, "integer power overflows 64 bits");
    r *= base;
  }
  return r;
}

}  // namespace charp
