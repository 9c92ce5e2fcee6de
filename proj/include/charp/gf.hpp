#pragma once

#include <cstdint>
#include <ostream>

#include "charp/error.hpp"

namespace charp {

/// Residue in [0, p). The modulus lives in the PrimeField that produced it.
struct Fp {
  std::uint32_t value = 0;

  friend bool operator==(Fp, Fp) = default;
  friend auto operator<=>(Fp, Fp) = default;
};

inline std::ostream& operator<<(std::ostream& os, Fp a) { return os << a.value; }

/// Arithmetic context for the prime field F_p, p < 2^31.
class PrimeField {
 public:
  /// Throws Error(NotPrime) for composite or out-of-range p.
  explicit PrimeField(std::uint64_t p);

  std::uint32_t characteristic() const noexcept { return p_; }

  Fp zero() const noexcept { return Fp{0}; }
  Fp one() const noexcept { return Fp{1}; }

  Fp from_int(std::int64_t v) const noexcept {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return Fp{static_cast<std::uint32_t>(r)};
  }

  Fp add(Fp a, Fp b) const noexcept {
    std::uint32_t s = a.value + b.value;
    return Fp{s >= p_ ? s - p_ : s};
  }
  Fp sub(Fp a, Fp b) const noexcept {
    return Fp{a.value >= b.value ? a.value - b.value : a.value + p_ - b.value};
  }
  Fp neg(Fp a) const noexcept { return Fp{a.value == 0 ? 0 : p_ - a.value}; }
  Fp mul(Fp a, Fp b) const noexcept {
    return Fp{static_cast<std::uint32_t>(static_cast<std::uint64_t>(a.value) * b.value % p_)};
  }
  /// Throws Error(DivisionByZero) on zero.
  Fp inv(Fp a) const;
  Fp div(Fp a, Fp b) const { return mul(a, inv(b)); }
  Fp pow(Fp a, std::uint64_t n) const noexcept;

  /// a^p. F_p is perfect, so this is the identity; kept as an explicit map
  /// for the polynomial layer.
  Fp frobenius(Fp a) const noexcept { return pow(a, p_); }

  friend bool operator==(const PrimeField& a, const PrimeField& b) noexcept { return a.p_ == b.p_; }

 private:
  std::uint32_t p_;
};

bool is_prime(std::uint64_t n) noexcept;

}  // namespace charp
