#pragma once

// Counting kernels over monomial ideals. Each kernel has a serial reference
// and an OpenMP version; tests check they agree and bench/ times them.

#include <cstdint>
#include <exception>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "charp/poly.hpp"

namespace charp::kernels {

enum class Exec { Serial, Parallel };

/// Minimal generators of the monomial ideal generated by `gens` (sorted in
/// grevlex-descending order for determinism).
std::vector<Monomial> minimalize(std::span<const Monomial> gens);

/// Exponent bound per variable from the pure-power generators, or nullopt
/// when some variable has none (the quotient is then infinite).
std::optional<std::vector<std::uint64_t>> pure_power_bounds(std::span<const Monomial> gens, std::size_t nvars);

/// dim_F S / (gens), nullopt if infinite. Throws ResourceBudgetExceeded when
/// the count exceeds `cap`.
std::optional<std::uint64_t> count_standard_monomials(std::span<const Monomial> gens, std::size_t nvars,
                                                      std::uint64_t cap, Exec exec = Exec::Parallel);

/// The standard monomials themselves, in lex-ascending exponent order.
/// Only for finite quotients; throws ResourceBudgetExceeded above `cap`.
std::vector<Monomial> enumerate_standard_monomials(std::span<const Monomial> gens, std::size_t nvars,
                                                   std::uint64_t cap);

/// Runs fn(i) for i in [0, n). Exceptions are captured per index and the one
/// with the smallest index is rethrown after all iterations finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn, Exec exec = Exec::Parallel);

/// Same as parallel_for but keeps every per-index exception.
std::vector<std::exception_ptr> parallel_for_collect(std::size_t n, const std::function<void(std::size_t)>& fn,
                                                     Exec exec = Exec::Parallel);

void set_num_threads(int n);

}  // namespace charp::kernels
