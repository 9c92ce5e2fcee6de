#include <gtest/gtest.h>

#include <random>

#include "charp/kernels.hpp"
#include "oracles.hpp"

using namespace charp;
using namespace charp::testing;
using namespace charp::oracle;

TEST(Oracle, HkLambdaAgainstDenseElimination) {
  struct Case {
    std::uint32_t p;
    std::vector<std::string> vars;
    const char* f;
    std::uint32_t e;
  };
  const std::vector<Case> cases{{5, {"x", "y", "z"}, "x*y - z^2", 1},     {7, {"x", "y", "z"}, "x*y - z^2", 1},
                                {3, {"x", "y", "z"}, "x*y - z^2", 2},     {5, {"x", "y"}, "x*y", 1},
                                {3, {"x", "y"}, "x*y", 3},                {5, {"x", "y", "z"}, "x^3+y^3+z^3", 1},
                                {3, {"x", "y"}, "y^2 - x^3 + x*y", 2},   {7, {"x", "y"}, "x^2*y + y^4 + x^3", 1}};
  for (const auto& c : cases) {
    const auto r = ring(c.p, c.vars);
    const auto f = parse_poly(c.f, r);
    const auto L = LocalRingAtPoint::at_origin(Ideal(r, {f}));
    const auto q = ipow(c.p, c.e);
    EXPECT_EQ(hk_function(L, c.e).lambda, dense_length({to_dense(f)}, c.vars.size(), q, c.p)) << c.f << " p=" << c.p;
  }
}

TEST(Oracle, HkLambdaAtTranslatedPoint) {
  const auto r = ring(5, {"x", "y"});
  // node moved to (2, 3)
  const auto f = parse_poly("(x - 2)*(y - 3)", r);
  const LocalRingAtPoint L(Ideal(r, {f}), pt({2, 3}));
  EXPECT_EQ(hk_function(L, 1).lambda, dense_length({to_dense(parse_poly("x*y", r))}, 2, 5, 5));
}

TEST(Oracle, SplittingNumberAgainstMultiplicationRank) {
  struct Case {
    std::uint32_t p;
    const char* f;
    std::uint32_t e;
  };
  // hypersurfaces in three variables: a_e = rank of multiplication by f^(q-1) on S/m^[q]
  const std::vector<Case> cases{{5, "x*y - z^2", 1}, {7, "x*y - z^2", 1}, {3, "x*y - z^2", 2},
                                {7, "x^3+y^3+z^3", 1}, {5, "x^3+y^3+z^3", 1}, {3, "x*y*z", 2},
                                {5, "x^2 + y^3 + z^5", 1}};
  for (const auto& c : cases) {
    const auto r = ring(c.p, {"x", "y", "z"});
    const auto f = parse_poly(c.f, r);
    const auto L = LocalRingAtPoint::at_origin(Ideal(r, {f}));
    const auto q = ipow(c.p, c.e);
    const auto g = naive_pow(to_dense(f), q - 1, c.p, 3);
    EXPECT_EQ(splitting_number(L, c.e).a_e, dense_colon_length(g, 3, q, c.p)) << c.f << " p=" << c.p << " e=" << c.e;
  }
}

TEST(Oracle, DualityRouteMatchesColonRoute) {
  // non-principal (I^[q] : I), where the shortcut through f^(q-1) does not apply
  struct Case {
    std::vector<std::string> vars;
    std::vector<const char*> gens;
    std::uint32_t e_max;
  };
  const std::vector<Case> cases{{{"x", "y", "z"}, {"x*y", "x*z", "y*z"}, 2},
                                {{"x", "y", "z"}, {"x^2 - y*z", "x*y"}, 2},
                                {{"x", "y", "z", "w"}, {"x*z - y^2", "x*w - y*z", "y*w - z^2"}, 1}};
  for (const auto& c : cases) {
    const auto r = ring(3, c.vars);
    std::vector<Polynomial> g;
    for (const char* s : c.gens) g.push_back(parse_poly(s, r));
    const auto L = LocalRingAtPoint::at_origin(Ideal(r, g));
    for (std::uint32_t e = 1; e <= c.e_max; ++e)
      EXPECT_EQ(splitting_number(L, e).a_e, *length(splitting_ideal(L, e))) << L.ideal().to_string() << " e=" << e;
  }
}

TEST(Oracle, DualityRouteMatchesDenseRankForIdeals) {
  // a_e = dim of the span of the trace generators acting on S/m^[q]
  const auto r = ring(3, {"x", "y", "z"});
  const auto L = LocalRingAtPoint::at_origin(ideal(r, {"x*y", "x*z", "y*z"}));
  const auto trace = frobenius_trace_ideal(L, 1);
  std::vector<Dense> gens;
  for (const auto& t : trace.gens()) gens.push_back(to_dense(t));
  const Box box{3, 3};
  EXPECT_EQ(splitting_number(L, 1).a_e, rank_mod_p(products(gens, box, 3), 3));
}

TEST(Oracle, FedderAgainstNaiveExpansion) {
  for (std::uint32_t p : {2u, 3u, 5u, 7u, 11u, 13u}) {
    for (const char* src : {"x^3 + y^3 + z^3", "x*y - z^2", "x^2 + y^3 + z^5", "x*y*z"}) {
      const auto r = ring(p, {"x", "y", "z"});
      const auto f = parse_poly(src, r);
      EXPECT_EQ(fedder_is_fpure(LocalRingAtPoint::at_origin(Ideal(r, {f}))), fedder_by_expansion(f, p))
          << src << " p=" << p;
    }
  }
  // the classical count: the x^6 y^6 z^6 coefficient of (x^3+y^3+z^3)^6 is 90
  const auto g = naive_pow(to_dense(parse_poly("x^3 + y^3 + z^3", ring(101, {"x", "y", "z"}))), 6, 101, 3);
  EXPECT_EQ(g.at(Exps{6, 6, 6}), 90u);
}

TEST(Oracle, PairOneVariableExplicitColon) {
  // S = F_p[x], a = (x): (x^q : x^k) = (x^{q-k}), so a_e = q - k.
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    const auto L = origin(p, {"x"}, {});
    const auto a = ideal(L.ring(), {"x"});
    for (std::uint32_t e = 1; e <= 2; ++e)
      for (const auto& t : {Rational(0), Rational(1, 3), Rational(1, 2), Rational(2, 3), Rational(1)}) {
        const auto q = ipow(p, e);
        const auto k = static_cast<std::uint64_t>(
            (t.numerator() * static_cast<std::int64_t>(q - 1) + t.denominator() - 1) / t.denominator());
        EXPECT_EQ(pair_splitting_number(L, a, t, e).a_e, q - std::min(k, q)) << p << " " << e << " " << t;
      }
  }
}

TEST(Oracle, StandardMonomialsByEnumeration) {
  std::mt19937_64 rng(4242);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 4;
    const std::uint32_t q = 2 + rng() % 6;
    std::vector<Monomial> gens;
    for (std::size_t i = 0; i < n; ++i) gens.push_back(Monomial::variable(n, i, q));
    for (int k = 0; k < static_cast<int>(rng() % 5); ++k) {
      Exps e(n);
      for (auto& x : e) x = static_cast<std::uint32_t>(rng() % q);
      gens.push_back(Monomial::from_exponents(e));
    }
    const auto brute = enumerate_standard(gens, n, q);
    const auto serial = kernels::count_standard_monomials(gens, n, 1u << 30, kernels::Exec::Serial);
    const auto par = kernels::count_standard_monomials(gens, n, 1u << 30, kernels::Exec::Parallel);
    ASSERT_EQ(serial, brute);
    ASSERT_EQ(par, brute);
    ASSERT_EQ(kernels::enumerate_standard_monomials(gens, n, 1u << 30).size(), brute);
  }
}
