// Serial reference vs OpenMP kernels. The per-point benchmarks run the same
// set of local computations through parallel_for in both modes.

#include <benchmark/benchmark.h>

#include <vector>

#include "charp/finv.hpp"
#include "charp/kernels.hpp"

namespace {

using charp::Monomial;
using charp::kernels::Exec;

// x_i^q for every i plus a spread of mixed monomials, so the box is big and
// the staircase is not trivial.
std::vector<Monomial> staircase(std::size_t nvars, std::uint32_t q) {
  std::vector<Monomial> gens;
  for (std::size_t i = 0; i < nvars; ++i) gens.push_back(Monomial::variable(nvars, i, q));
  std::vector<std::uint32_t> e(nvars);
  for (std::size_t i = 0; i + 1 < nvars; ++i) {
    std::fill(e.begin(), e.end(), 0);
    e[i] = q / 2;
    e[i + 1] = q / 3 + 1;
    gens.push_back(Monomial::from_exponents(e));
  }
  return gens;
}

void BM_count(benchmark::State& state, Exec exec) {
  const auto nvars = static_cast<std::size_t>(state.range(0));
  const auto q = static_cast<std::uint32_t>(state.range(1));
  const auto gens = staircase(nvars, q);
  for (auto _ : state) {
    auto n = charp::kernels::count_standard_monomials(gens, nvars, 1ULL << 40, exec);
    benchmark::DoNotOptimize(n);
  }
}

void BM_points(benchmark::State& state, Exec exec) {
  // A_1 at the origin and at a few smooth points, e = 1, p = 5.
  const auto ring = charp::make_ring(charp::PrimeField(5), {"x", "y", "z"});
  const charp::Ideal I(ring, {charp::parse_poly("x*y - z^2", ring)});
  std::vector<std::vector<charp::Fp>> points = {{charp::Fp{0}, charp::Fp{0}, charp::Fp{0}}};
  for (std::uint32_t a = 1; a < 5; ++a) points.push_back({charp::Fp{a}, charp::Fp{a}, charp::Fp{a}});
  for (auto _ : state) {
    std::vector<std::uint64_t> out(points.size());
    charp::kernels::parallel_for(
        points.size(),
        [&](std::size_t i) {
          const charp::LocalRingAtPoint L(I, points[i]);
          out[i] = charp::hk_function(L, 1).lambda + charp::splitting_number(L, 1).a_e;
        },
        exec);
    benchmark::DoNotOptimize(out);
  }
}

}  // namespace

BENCHMARK_CAPTURE(BM_count, serial, Exec::Serial)->Args({3, 64})->Args({4, 32})->Args({5, 16});
BENCHMARK_CAPTURE(BM_count, openmp, Exec::Parallel)->Args({3, 64})->Args({4, 32})->Args({5, 16});
BENCHMARK_CAPTURE(BM_points, serial, Exec::Serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_points, openmp, Exec::Parallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
