#include "charp/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <limits>
#include <string>

namespace charp::kernels {

namespace {

using Exps = std::vector<std::uint32_t>;

[[noreturn]] void over_cap(std::uint64_t cap) {
  throw Error(ErrorKind::ResourceBudgetExceeded,
              "standard monomial count exceeds the budget of " + std::to_string(cap));
}

bool divides_prefix(const Exps& g, const Exps& u) noexcept {
  for (std::size_t i = 0; i < u.size(); ++i)
    if (g[i] > u[i]) return false;
  return true;
}

// Generators split by the last variable of their support: a prefix
// (u_0..u_k) is already in the ideal when some generator supported on
// {0..k} divides it.
struct Layout {
  std::size_t n = 0;
  std::vector<std::uint64_t> bounds;
  std::vector<std::vector<Exps>> stop_at;  // indexed by depth k < n-1
  std::vector<Exps> all;
};

Layout make_layout(std::span<const Monomial> gens, std::size_t n, std::vector<std::uint64_t> bounds) {
  Layout L;
  L.n = n;
  L.bounds = std::move(bounds);
  L.stop_at.resize(n);
  for (const auto& g : gens) {
    Exps e(g.exponents().begin(), g.exponents().end());
    std::size_t last = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (e[i] != 0) last = i;
    if (last + 1 < n) L.stop_at[last].push_back(e);
    L.all.push_back(std::move(e));
  }
  return L;
}

// Number of admissible exponents of the last variable above prefix u.
std::uint64_t last_var_span(const Layout& L, const Exps& u) noexcept {
  std::uint64_t b = std::numeric_limits<std::uint64_t>::max();
  const std::size_t last = L.n - 1;
  for (const auto& g : L.all) {
    bool ok = true;
    for (std::size_t i = 0; i < last; ++i)
      if (g[i] > u[i]) {
        ok = false;
        break;
      }
    if (ok) b = std::min<std::uint64_t>(b, g[last]);
  }
  return b;
}

std::uint64_t count_from(const Layout& L, Exps& u, std::size_t depth, std::uint64_t cap) {
  if (depth == L.n - 1) return last_var_span(L, u);
  std::uint64_t total = 0;
  for (std::uint64_t v = 0; v < L.bounds[depth]; ++v) {
    u[depth] = static_cast<std::uint32_t>(v);
    bool inside = false;
    for (const auto& g : L.stop_at[depth])
      if (divides_prefix(g, u)) {
        inside = true;
        break;
      }
    if (inside) break;
    total += count_from(L, u, depth + 1, cap);
    if (total > cap) over_cap(cap);
  }
  u[depth] = 0;
  return total;
}

void enumerate_from(const Layout& L, Exps& u, std::size_t depth, std::uint64_t cap, std::vector<Monomial>& out) {
  if (depth == L.n - 1) {
    std::uint64_t b = last_var_span(L, u);
    for (std::uint64_t v = 0; v < b; ++v) {
      u[depth] = static_cast<std::uint32_t>(v);
      out.push_back(Monomial::from_exponents(u));
      if (out.size() > cap) over_cap(cap);
    }
    u[depth] = 0;
    return;
  }
  for (std::uint64_t v = 0; v < L.bounds[depth]; ++v) {
    u[depth] = static_cast<std::uint32_t>(v);
    bool inside = false;
    for (const auto& g : L.stop_at[depth])
      if (divides_prefix(g, u)) {
        inside = true;
        break;
      }
    if (inside) break;
    enumerate_from(L, u, depth + 1, cap, out);
  }
  u[depth] = 0;
}

}  // namespace

std::vector<Monomial> minimalize(std::span<const Monomial> gens) {
  std::vector<Monomial> sorted(gens.begin(), gens.end());
  const auto ord = MonomialOrder::grevlex();
  std::sort(sorted.begin(), sorted.end(), [&](const Monomial& a, const Monomial& b) { return ord.less(a, b); });
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<Monomial> out;
  // ascending grevlex: a divisor always precedes its multiples
  for (const auto& m : sorted) {
    bool redundant = std::any_of(out.begin(), out.end(), [&](const Monomial& g) { return g.divides(m); });
    if (!redundant) out.push_back(m);
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::optional<std::vector<std::uint64_t>> pure_power_bounds(std::span<const Monomial> gens, std::size_t nvars) {
  std::vector<std::uint64_t> bounds(nvars, std::numeric_limits<std::uint64_t>::max());
  for (const auto& g : gens) {
    int v = g.pure_power_variable();
    if (v >= 0) bounds[v] = std::min<std::uint64_t>(bounds[v], g[v]);
  }
  for (auto b : bounds)
    if (b == std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
  return bounds;
}

std::optional<std::uint64_t> count_standard_monomials(std::span<const Monomial> gens_in, std::size_t nvars,
                                                      std::uint64_t cap, Exec exec) {
  std::vector<Monomial> gens = minimalize(gens_in);
  if (std::any_of(gens.begin(), gens.end(), [](const Monomial& m) { return m.is_one(); })) return 0;
  if (nvars == 0) return 1;
  auto bounds = pure_power_bounds(gens, nvars);
  if (!bounds) return std::nullopt;

  if (std::all_of(gens.begin(), gens.end(), [](const Monomial& m) { return m.pure_power_variable() >= 0; })) {
    std::uint64_t n = 1;
    for (auto b : *bounds) {
      if (b != 0 && n > cap / b) over_cap(cap);
      n *= b;
    }
    if (n > cap) over_cap(cap);
    return n;
  }

  Layout L = make_layout(gens, nvars, *bounds);
  if (nvars == 1) return L.bounds[0];

  if (exec == Exec::Serial) {
    Exps u(nvars, 0);
    return count_from(L, u, 0, cap);
  }

  // first-variable slices are independent; generators supported on x_0
  // alone are pure powers, so every slice below bounds[0] is a live prefix
  const std::int64_t top = static_cast<std::int64_t>(L.bounds[0]);
  std::atomic<std::uint64_t> total{0};
  std::atomic<bool> exceeded{false};
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t v = 0; v < top; ++v) {
    if (exceeded.load(std::memory_order_relaxed)) continue;
    Exps u(nvars, 0);
    u[0] = static_cast<std::uint32_t>(v);
    try {
      std::uint64_t part = count_from(L, u, 1, cap);
      if (total.fetch_add(part) + part > cap) exceeded = true;
    } catch (const Error&) {
      exceeded = true;
    }
  }
  if (exceeded) over_cap(cap);
  return total.load();
}

std::vector<Monomial> enumerate_standard_monomials(std::span<const Monomial> gens_in, std::size_t nvars,
                                                   std::uint64_t cap) {
  std::vector<Monomial> gens = minimalize(gens_in);
  if (std::any_of(gens.begin(), gens.end(), [](const Monomial& m) { return m.is_one(); })) return {};
  if (nvars == 0) return {Monomial(0)};
  auto bounds = pure_power_bounds(gens, nvars);
  if (!bounds) throw Error(ErrorKind::InvalidArgument, "quotient is not finite dimensional");
  Layout L = make_layout(gens, nvars, *bounds);
  std::vector<Monomial> out;
  Exps u(nvars, 0);
  enumerate_from(L, u, 0, cap, out);
  return out;
}

std::vector<std::exception_ptr> parallel_for_collect(std::size_t n, const std::function<void(std::size_t)>& fn,
                                                     Exec exec) {
  std::vector<std::exception_ptr> errors(n);
  const std::int64_t count = static_cast<std::int64_t>(n);
  if (exec == Exec::Serial) {
    for (std::int64_t i = 0; i < count; ++i) {
      try {
        fn(static_cast<std::size_t>(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
    return errors;
  }
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  return errors;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn, Exec exec) {
  for (auto& e : parallel_for_collect(n, fn, exec))
    if (e) std::rethrow_exception(e);
}

void set_num_threads(int n) {
  if (n > 0) omp_set_num_threads(n);
}

}  // namespace charp::kernels
