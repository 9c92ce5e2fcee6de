#include "charp/gf.hpp"

#include <string>

namespace charp {

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnknownVariable: return "UnknownVariable";
    case ErrorKind::ExponentOverflow: return "ExponentOverflow";
    case ErrorKind::TooManyVariables: return "TooManyVariables";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::ResourceBudgetExceeded: return "ResourceBudgetExceeded";
    case ErrorKind::NotAPowerOfP: return "NotAPowerOfP";
    case ErrorKind::NotPrimary: return "NotPrimary";
    case ErrorKind::UnitIdeal: return "UnitIdeal";
    case ErrorKind::ZeroIdeal: return "ZeroIdeal";
    case ErrorKind::NotStabilized: return "NotStabilized";
    case ErrorKind::PointNotOnVariety: return "PointNotOnVariety";
    case ErrorKind::NotEquidimensional: return "NotEquidimensional";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

PrimeField::PrimeField(std::uint64_t p) : p_(0) {
  if (p >= (std::uint64_t{1} << 31) || !is_prime(p))
    throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not a prime below 2^31");
  p_ = static_cast<std::uint32_t>(p);
}

Fp PrimeField::inv(Fp a) const {
  if (a.value == 0) throw Error(ErrorKind::DivisionByZero, "inverse of 0 in F_" + std::to_string(p_));
  // extended Euclid on (a, p)
  std::int64_t r0 = p_, r1 = a.value, t0 = 0, t1 = 1;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::int64_t r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
    std::int64_t t2 = t0 - q * t1;
    t0 = t1;
    t1 = t2;
  }
  return from_int(t0);
}

Fp PrimeField::pow(Fp a, std::uint64_t n) const noexcept {
  Fp result = one();
  while (n != 0) {
    if (n & 1) result = mul(result, a);
    a = mul(a, a);
    n >>= 1;
  }
  return result;
}

}  // namespace charp
