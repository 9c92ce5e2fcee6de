// Randomized properties. The selftest suites run here with 200 instances
// each; the rest are invariants the CLI selftest does not cover.

#include <gtest/gtest.h>

#include "charp/selftest.hpp"
#include "charp/spectrum.hpp"
#include "helpers.hpp"

using namespace charp;
using namespace charp::testing;
using selftest::RandomInstances;

namespace {

constexpr int kInstances = 200;
constexpr std::uint64_t kSeed = 977;

void expect_pass(const selftest::CheckResult& r) {
  EXPECT_TRUE(r.passed) << r.name << ": " << r.detail;
  EXPECT_GE(r.instances, kInstances) << r.name;
}

}  // namespace

TEST(Properties, OrderAxioms) { expect_pass(selftest::order_axioms(kSeed, kInstances)); }
TEST(Properties, RingAxioms) { expect_pass(selftest::ring_axioms(kSeed, kInstances)); }
TEST(Properties, FreshmansDream) { expect_pass(selftest::freshmans_dream(kSeed, kInstances)); }
TEST(Properties, BracketPowerLaws) { expect_pass(selftest::bracket_power_laws(kSeed, kInstances)); }
TEST(Properties, SandwichInclusions) { expect_pass(selftest::sandwich_inclusions(kSeed, kInstances)); }
TEST(Properties, GroebnerCertificates) { expect_pass(selftest::groebner_certificates(kSeed, kInstances)); }
TEST(Properties, ColonDefiningProperty) { expect_pass(selftest::colon_property(kSeed, kInstances)); }
TEST(Properties, NodeAdditivity) { expect_pass(selftest::node_additivity(kSeed, kInstances)); }

TEST(Properties, GoldenCorpus) {
  for (const auto& r : selftest::golden_corpus()) EXPECT_TRUE(r.passed) << r.name << ": " << r.detail;
}

TEST(Properties, MembershipOfExplicitCombinations) {
  RandomInstances gen(kSeed + 1);
  for (int i = 0; i < kInstances; ++i) {
    const auto r = gen.ring(gen.prime({3, 5, 7}), 1 + gen.below(3));
    const auto I = gen.ideal(r, 3, 3, 3);
    Polynomial f = Polynomial::constant(r, Fp{0});
    for (const auto& g : I.gens()) f = f + gen.polynomial(r, 3, 2) * g;
    ASSERT_TRUE(I.normal_form(f).is_zero()) << I.to_string() << " / " << f.to_string();
  }
}

TEST(Properties, LengthIsAntitone) {
  RandomInstances gen(kSeed + 2);
  for (int i = 0; i < kInstances; ++i) {
    const auto r = gen.ring(gen.prime({3, 5}), 1 + gen.below(3));
    const auto box = Ideal::frobenius_box(r, r->field().characteristic());
    const auto J = box + gen.ideal(r, 2, 3, 3, true);
    const auto J2 = J + gen.ideal(r, 1, 3, 3, true);
    ASSERT_GE(*length(J), *length(J2)) << J.to_string() << " vs " << J2.to_string();
  }
}

TEST(Properties, KunzInequalityAndSplittingBounds) {
  RandomInstances gen(kSeed + 3);
  for (int i = 0; i < kInstances; ++i) {
    const auto p = gen.prime({2, 3, 5});
    const auto r = gen.ring(p, 2 + gen.below(2));
    const auto f = gen.polynomial(r, 3, 3, true);
    if (f.is_zero()) continue;
    const auto L = LocalRingAtPoint::at_origin(Ideal(r, {f}));
    const auto hk = hk_function(L, 1);
    const auto sp = splitting_number(L, 1);
    const auto qd = ipow(p, static_cast<unsigned>(L.dim()));
    ASSERT_GE(hk.lambda, qd) << f.to_string();
    ASSERT_LE(sp.a_e, qd) << f.to_string();
    // regular at the origin iff lambda = q^d iff a_1 = q^d
    ASSERT_EQ(hk.lambda == qd, sp.a_e == qd) << f.to_string();
    ASSERT_EQ(sp.a_e > 0, fedder_is_fpure(L)) << f.to_string();
  }
}

TEST(Properties, PairIsAntitoneInT) {
  RandomInstances gen(kSeed + 4);
  const std::vector<Rational> grid{Rational(0), Rational(1, 4), Rational(1, 2), Rational(3, 4), Rational(1)};
  int checked = 0;
  for (int i = 0; i < kInstances / 4; ++i) {
    const auto p = gen.prime({3, 5});
    const auto r = gen.ring(p, 2);
    const auto f = gen.polynomial(r, 2, 3, true);
    const auto I = f.is_zero() ? Ideal::zero(r) : Ideal(r, {f});
    const auto L = LocalRingAtPoint::at_origin(I);
    const auto a = gen.ideal(r, 2, 2, 2, true);
    if (a.is_zero() || I.contains(a)) continue;  // a must be nonzero modulo I
    std::uint64_t prev = splitting_number(L, 1).a_e;
    for (const auto& t : grid) {
      const auto cur = pair_splitting_number(L, a, t, 1).a_e;
      ASSERT_LE(cur, prev) << I.to_string() << " a=" << a.to_string() << " t=" << t;
      prev = cur;
    }
    ++checked;
  }
  EXPECT_GE(checked, kInstances / 8);
}

TEST(Properties, FlatExtensionIsEqualOnRandomHypersurfaces) {
  RandomInstances gen(kSeed + 5);
  for (int i = 0; i < 40; ++i) {
    const auto r = gen.ring(gen.prime({2, 3}), 2);
    const auto f = gen.polynomial(r, 3, 3, true);
    if (f.is_zero()) continue;
    const auto rep = flat_extension_check(LocalRingAtPoint::at_origin(Ideal(r, {f})), 1, 1);
    ASSERT_TRUE(rep.all_equal()) << f.to_string();
    ASSERT_TRUE(rep.all_monotone()) << f.to_string();
  }
}

TEST(Properties, GlobalBoundDirection) {
  RandomInstances gen(kSeed + 6);
  for (int i = 0; i < 20; ++i) {
    const auto p = gen.prime({3, 5});
    const auto r = gen.ring(p, 2);
    auto f = gen.polynomial(r, 3, 3, true);
    if (f.is_zero()) f = Polynomial::variable(r, 0);
    const RingPresentation R({{"c", Ideal(r, {f}), std::nullopt}});
    std::vector<PrimeSample> samples{{0, pt({0, 0}), false, "origin"}};
    const std::vector<std::vector<Fp>> excl{pt({0, 0})};
    for (auto& s : random_smooth_points(R, 0, 3, i, excl)) samples.push_back(s);
    const auto hk = global_hk(R, samples, 2);
    const auto fs = global_fsig(R, samples, 2);
    for (const auto& s : hk.per_sample) ASSERT_LE(s.estimate->value, hk.value.value);
    for (const auto& s : fs.per_sample) ASSERT_GE(s.estimate->value, fs.value.value);
    // Jacobian-smooth samples are regular: e_HK = s = 1
    for (std::size_t k = 0; k < samples.size(); ++k)
      if (hk.per_sample[k].jacobian_regular) {
        ASSERT_EQ(hk.per_sample[k].estimate->value, Rational(1));
        ASSERT_EQ(fs.per_sample[k].estimate->value, Rational(1));
      }
  }
}
