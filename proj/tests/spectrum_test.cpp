#include <gtest/gtest.h>

#include "charp/spectrum.hpp"
#include "expect.hpp"

using namespace charp;
using namespace charp::testing;

namespace {

// F_p[x] x F_p, the second factor written as F_p[y]/(y).
RingPresentation line_times_point(std::uint32_t p) {
  const auto r1 = ring(p, {"x"});
  const auto r2 = ring(p, {"y"});
  return RingPresentation({{"line", Ideal::zero(r1), std::nullopt}, {"pt", ideal(r2, {"y"}), std::nullopt}});
}

RingPresentation point_times_point(std::uint32_t p) {
  const auto r = ring(p, {"x"});
  return RingPresentation({{"a", ideal(r, {"x"}), std::vector<Ideal>{ideal(r, {"x"})}},
                           {"b", ideal(r, {"x"}), std::vector<Ideal>{ideal(r, {"x"})}}});
}

RingPresentation a1(std::uint32_t p) {
  const auto r = ring(p, {"x", "y", "z"});
  return RingPresentation({{"A1", ideal(r, {"x*y - z^2"}), std::nullopt}});
}

PrimeSample at(std::size_t comp, std::vector<Fp> point, std::string label) {
  return PrimeSample{comp, std::move(point), false, std::move(label)};
}

}  // namespace

TEST(Presentation, Validation) {
  const auto r5 = ring(5, {"x"});
  const auto r7 = ring(7, {"x"});
  EXPECT_TRUE(throws_kind(ErrorKind::InvalidArgument, [] { RingPresentation({}); }));
  EXPECT_TRUE(throws_kind(ErrorKind::InvalidArgument, [&] {
    RingPresentation({{"a", Ideal::zero(r5), std::nullopt}, {"b", Ideal::zero(r7), std::nullopt}});
  }));
  EXPECT_TRUE(throws_kind(ErrorKind::UnitIdeal, [&] { RingPresentation({{"a", ideal(r5, {"1"}), std::nullopt}}); }));
  // declared prime must contain I
  EXPECT_TRUE(throws_kind(ErrorKind::InvalidArgument, [&] {
    RingPresentation({{"a", ideal(r5, {"x"}), std::vector<Ideal>{Ideal::zero(r5)}}});
  }));
}

TEST(Gamma, SpecExamples) {
  const auto g1 = gamma_data(line_times_point(5));
  EXPECT_EQ(g1.gamma, 1);
  EXPECT_EQ(g1.z_components, (std::vector<std::size_t>{0}));
  EXPECT_FALSE(g1.z_is_spec);
  EXPECT_EQ(g1.alpha_at_closed_point, (std::vector<int>{0, 0}));

  const auto g2 = gamma_data(point_times_point(5));
  EXPECT_EQ(g2.gamma, 0);
  EXPECT_EQ(g2.z_components, (std::vector<std::size_t>{0, 1}));
  EXPECT_TRUE(g2.z_is_spec);

  EXPECT_TRUE(gamma_data(a1(5)).z_is_spec);
}

TEST(Gamma, NonEquidimensionalDeclaredPrimes) {
  const auto r = ring(5, {"x", "y", "z"});
  // (xz, yz) = (z) cap (x, y): a plane and a line
  const RingPresentation R({{"c", ideal(r, {"x*z", "y*z"}), std::vector<Ideal>{ideal(r, {"z"}), ideal(r, {"x", "y"})}}});
  const auto g = gamma_data(R);
  EXPECT_FALSE(g.equidimensional[0]);
  EXPECT_FALSE(g.z_is_spec);
  EXPECT_TRUE(throws_kind(ErrorKind::NotEquidimensional, [&] {
    semicontinuity_probe(R, at(0, pt({0, 0, 0}), "o"), {at(0, pt({1, 0, 0}), "p")}, 1);
  }));
}

TEST(Jacobian, SmoothAndSingular) {
  const auto r = ring(5, {"x", "y", "z"});
  const auto I = ideal(r, {"x*y - z^2"});
  EXPECT_FALSE(jacobian_regular(I, 2, pt({0, 0, 0})));
  EXPECT_TRUE(jacobian_regular(I, 2, pt({1, 1, 1})));
}

TEST(RandomPoints, DeterministicSmoothAndExcluding) {
  const auto R = a1(5);
  const std::vector<std::vector<Fp>> excl{pt({1, 1, 1})};
  const auto s1 = random_smooth_points(R, 0, 5, 42, excl);
  const auto s2 = random_smooth_points(R, 0, 5, 42, excl);
  ASSERT_EQ(s1.size(), 5u);
  for (std::size_t i = 0; i < s1.size(); ++i) {
    EXPECT_EQ(s1[i].point, s2[i].point);
    EXPECT_EQ(s1[i].label, s2[i].label);
    EXPECT_NE(s1[i].point, excl[0]);
    EXPECT_TRUE(jacobian_regular(R.component(0).ideal, 2, s1[i].point));
    for (const auto& g : R.component(0).ideal.gens()) EXPECT_EQ(g.evaluate(s1[i].point), Fp{0});
  }
}

TEST(GlobalHk, PointTimesPointIsOne) {
  const auto R = point_times_point(5);
  const std::vector<PrimeSample> samples{{0, {}, true, "a"}, {1, {}, true, "b"}};
  const auto g = global_hk(R, samples, 2);
  EXPECT_EQ(g.value.value, Rational(1));
  EXPECT_EQ(g.bound, BoundDirection::Exact);
}

TEST(GlobalHk, OffZSampleIgnored) {
  const auto R = line_times_point(5);
  const auto g = global_hk(R, {at(0, pt({0}), "line0"), at(1, pt({0}), "pt0")}, 2);
  EXPECT_EQ(g.value.value, Rational(1));
  EXPECT_FALSE(g.per_sample[1].in_z);
  EXPECT_FALSE(g.per_sample[1].estimate.has_value());
  EXPECT_EQ(g.extremal_sample, 0u);
  EXPECT_TRUE(throws_kind(ErrorKind::InvalidArgument, [&] { global_hk(R, {at(1, pt({0}), "pt0")}, 2); }));
}

TEST(GlobalHk, A1MaxAtOriginAndBoundsHold) {
  const auto R = a1(7);
  std::vector<PrimeSample> samples{at(0, pt({0, 0, 0}), "origin")};
  const std::vector<std::vector<Fp>> excl{pt({0, 0, 0})};
  for (auto& s : random_smooth_points(R, 0, 3, 7, excl)) samples.push_back(s);
  const auto g = global_hk(R, samples, 2);
  EXPECT_EQ(g.extremal_sample, 0u);
  EXPECT_NEAR(to_double(g.value.value), 1.5, 0.02);
  EXPECT_EQ(g.bound, BoundDirection::LowerBound);
  for (const auto& s : g.per_sample) {
    ASSERT_TRUE(s.estimate.has_value());
    EXPECT_LE(s.estimate->value, g.value.value);
    if (s.jacobian_regular) EXPECT_EQ(s.estimate->value, Rational(1));
  }
}

TEST(GlobalFsig, ZRuleGivesExactZero) {
  const auto g = global_fsig(line_times_point(5), {at(0, pt({0}), "line0")}, 2);
  EXPECT_EQ(g.value.value, Rational(0));
  EXPECT_TRUE(g.z_rule_applied);
  EXPECT_EQ(g.bound, BoundDirection::Exact);
  ASSERT_EQ(g.per_sample.size(), 1u);
  EXPECT_TRUE(g.per_sample[0].jacobian_regular);
}

TEST(GlobalFsig, A1MinAtOrigin) {
  const auto R = a1(5);
  std::vector<PrimeSample> samples{at(0, pt({0, 0, 0}), "origin")};
  const std::vector<std::vector<Fp>> excl{pt({0, 0, 0})};
  for (auto& s : random_smooth_points(R, 0, 3, 7, excl)) samples.push_back(s);
  const auto g = global_fsig(R, samples, 2);
  EXPECT_EQ(g.extremal_sample, 0u);
  EXPECT_NEAR(to_double(g.value.value), 0.5, 0.02);
  EXPECT_EQ(g.bound, BoundDirection::UpperBound);
  for (const auto& s : g.per_sample) EXPECT_GE(s.estimate->value, g.value.value);
}

TEST(GlobalFsig, RegularDomainIsOne) {
  const auto r = ring(3, {"x", "y"});
  const RingPresentation R({{"plane", Ideal::zero(r), std::nullopt}});
  const auto g = global_fsig(R, {at(0, pt({0, 0}), "o"), at(0, pt({1, 2}), "p")}, 2);
  EXPECT_EQ(g.value.value, Rational(1));
}

TEST(Semicontinuity, A1OriginDominates) {
  const auto R = a1(5);
  const std::vector<std::vector<Fp>> excl{pt({0, 0, 0})};
  const auto nearby = random_smooth_points(R, 0, 5, 11, excl);
  const auto rep = semicontinuity_probe(R, at(0, pt({0, 0, 0}), "origin"), nearby, 1);
  EXPECT_TRUE(rep.holds());
  EXPECT_EQ(rep.special.record.lambda, 37u);
  for (const auto& row : rep.nearby) EXPECT_EQ(row.record.lambda, 25u);
}

TEST(Semicontinuity, ERoundZeroAndRegular) {
  const auto R = a1(5);
  const auto zero = semicontinuity_probe(R, at(0, pt({0, 0, 0}), "o"), {at(0, pt({1, 1, 1}), "p")}, 0);
  EXPECT_EQ(zero.special.record.lambda, 1u);
  EXPECT_EQ(zero.nearby[0].record.lambda, 1u);
  const auto r = ring(5, {"x", "y"});
  const RingPresentation plane({{"plane", Ideal::zero(r), std::nullopt}});
  const auto reg = semicontinuity_probe(plane, at(0, pt({0, 0}), "o"), {at(0, pt({2, 3}), "p")}, 1);
  EXPECT_EQ(reg.special.record.lambda, 25u);
  EXPECT_EQ(reg.nearby[0].record.lambda, 25u);
}

TEST(Semicontinuity, RejectsMixedComponents) {
  const auto R = line_times_point(5);
  EXPECT_TRUE(throws_kind(ErrorKind::InvalidArgument,
                          [&] { semicontinuity_probe(R, at(0, pt({0}), "a"), {at(1, pt({0}), "b")}, 1); }));
}

TEST(FlatExtension, A1AndRegular) {
  const auto L = origin(5, {"x", "y", "z"}, {"x*y - z^2"});
  const auto rep = flat_extension_check(L, 1, 1);
  ASSERT_EQ(rep.rows.size(), 1u);
  EXPECT_EQ(rep.rows[0].hk_ext.lambda, 5 * rep.rows[0].hk_base.lambda);
  EXPECT_TRUE(rep.all_equal());
  EXPECT_TRUE(rep.all_monotone());

  const auto reg = flat_extension_check(origin(3, {"x"}, {}), 2, 2);
  for (const auto& row : reg.rows) {
    EXPECT_EQ(row.hk_ext.normalized, Rational(1));
    EXPECT_EQ(row.split_ext.s_e, Rational(1));
  }
  EXPECT_TRUE(throws_kind(ErrorKind::InvalidArgument, [&] { flat_extension_check(L, 0, 1); }));
}

TEST(FlatExtension, PairVersion) {
  const auto L = origin(5, {"x", "y"}, {"x*y"});
  const auto rep = flat_extension_check(L, 1, 2, {}, PairSpec{ideal(L.ring(), {"x", "y"}), Rational(1, 2)});
  EXPECT_TRUE(rep.all_equal());
  for (const auto& row : rep.rows) {
    ASSERT_TRUE(row.pair_base && row.pair_ext);
    EXPECT_EQ(row.pair_ext->a_e, row.q * row.pair_base->a_e);
  }
}

TEST(FlatExtension, NameClashGetsFreshVariable) {
  const auto L = origin(3, {"t1", "x"}, {"t1*x"});
  const auto T = extend_by_variables(L, 1);
  EXPECT_EQ(T.nvars(), 3u);
  EXPECT_EQ(T.dim(), L.dim() + 1);
}
