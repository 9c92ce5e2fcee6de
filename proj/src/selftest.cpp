#include "charp/selftest.hpp"

#include <cmath>
#include <functional>
#include <ostream>

#include "charp/spectrum.hpp"

namespace charp::selftest {

namespace {

const std::vector<std::string> kVarNames = {"x", "y", "z", "w"};

template <typename Fn>
CheckResult suite(std::string name, std::uint64_t seed, int count, Fn&& fn) {
  CheckResult r{std::move(name), true, 0, {}};
  RandomInstances gen(seed);
  for (int i = 0; i < count; ++i) {
    std::string why;
    try {
      why = fn(gen);
    } catch (const std::exception& err) {
      why = std::string("exception: ") + err.what();
    }
    ++r.instances;
    if (!why.empty()) {
      r.passed = false;
      r.detail = "instance " + std::to_string(i) + ": " + why;
      return r;
    }
  }
  r.detail = std::to_string(count) + " instances";
  return r;
}

CheckResult single(std::string name, const std::function<std::string()>& fn) {
  CheckResult r{std::move(name), true, 1, {}};
  try {
    r.detail = fn();
  } catch (const std::exception& err) {
    r.detail = std::string("exception: ") + err.what();
    r.passed = false;
    return r;
  }
  if (r.detail.rfind("FAIL", 0) == 0) r.passed = false;
  return r;
}

int sign(int v) { return (v > 0) - (v < 0); }

MonomialOrder random_order(RandomInstances& gen, std::size_t nvars) {
  switch (gen.below(3)) {
    case 0: return MonomialOrder::lex();
    case 1: return MonomialOrder::grevlex();
    default: return nvars > 1 ? MonomialOrder::elimination(1 + gen.below(nvars - 1)) : MonomialOrder::grevlex();
  }
}

std::string mono_text(const Monomial& m) {
  std::string s = "(";
  for (std::size_t i = 0; i < m.nvars(); ++i) s += (i ? "," : "") + std::to_string(m[i]);
  return s + ")";
}

LocalRingAtPoint origin_ring(const std::string& vars_csv, const std::vector<std::string>& gens, std::uint32_t p) {
  std::vector<std::string> vars;
  for (std::size_t start = 0;;) {
    auto comma = vars_csv.find(',', start);
    vars.push_back(vars_csv.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  auto R = make_ring(PrimeField(p), vars);
  std::vector<Polynomial> g;
  for (const auto& s : gens) g.push_back(parse_poly(s, R));
  return LocalRingAtPoint::at_origin(Ideal(R, std::move(g)));
}

std::string expect_eq(const std::string& what, std::uint64_t got, std::uint64_t want) {
  if (got == want) return {};
  return what + " = " + std::to_string(got) + ", expected " + std::to_string(want) + "; ";
}

std::string verdict(const std::string& failures, const std::string& ok_text) {
  return failures.empty() ? ok_text : "FAIL " + failures;
}

}  // namespace

std::uint32_t RandomInstances::prime(std::initializer_list<std::uint32_t> choices) {
  return *(choices.begin() + below(choices.size()));
}

Monomial RandomInstances::monomial(std::size_t nvars, std::uint32_t max_exp) {
  Monomial m(nvars);
  for (std::size_t i = 0; i < nvars; ++i) m.set(i, static_cast<std::uint32_t>(below(max_exp + 1)));
  return m;
}

Polynomial RandomInstances::polynomial(const RingPtr& ring, int max_terms, std::uint32_t max_exp, bool in_maximal) {
  std::vector<Term> terms;
  const int n = 1 + static_cast<int>(below(static_cast<std::uint64_t>(max_terms)));
  for (int i = 0; i < n; ++i) {
    Monomial m = monomial(ring->nvars(), max_exp);
    if (in_maximal && m.is_one()) continue;
    Fp c = element(ring->field());
    if (c.value == 0) c = Fp{1};
    terms.push_back({c, m});
  }
  return Polynomial::from_terms(ring, std::move(terms));
}

Ideal RandomInstances::ideal(const RingPtr& ring, int max_gens, int max_terms, std::uint32_t max_exp, bool in_maximal) {
  std::vector<Polynomial> gens;
  const int n = 1 + static_cast<int>(below(static_cast<std::uint64_t>(max_gens)));
  for (int i = 0; i < n; ++i) gens.push_back(polynomial(ring, max_terms, max_exp, in_maximal));
  return Ideal(ring, std::move(gens));
}

std::vector<Fp> RandomInstances::point(const RingPtr& ring) {
  std::vector<Fp> pt(ring->nvars());
  for (auto& c : pt) c = element(ring->field());
  return pt;
}

RingPtr RandomInstances::ring(std::uint32_t p, std::size_t nvars, MonomialOrder order) {
  return make_ring(PrimeField(p), std::vector<std::string>(kVarNames.begin(), kVarNames.begin() + static_cast<std::ptrdiff_t>(nvars)), order);
}

CheckResult order_axioms(std::uint64_t seed, int count) {
  return suite("order axioms", seed, count, [](RandomInstances& gen) -> std::string {
    const std::size_t n = 1 + gen.below(4);
    const MonomialOrder ord = random_order(gen, n);
    const Monomial a = gen.monomial(n, 4), b = gen.monomial(n, 4), c = gen.monomial(n, 4);
    const Monomial one(n);
    const std::string where = ord.name() + " a=" + mono_text(a) + " b=" + mono_text(b) + " c=" + mono_text(c);
    if (ord.compare(a, a) != 0) return "not reflexive, " + where;
    if (sign(ord.compare(a, b)) != -sign(ord.compare(b, a))) return "not antisymmetric, " + where;
    if ((ord.compare(a, b) == 0) != (a == b)) return "not total, " + where;
    if (ord.compare(a, b) < 0 && ord.compare(b, c) < 0 && ord.compare(a, c) >= 0) return "not transitive, " + where;
    if (sign(ord.compare(a, b)) != sign(ord.compare(a * c, b * c))) return "not multiplicative, " + where;
    if (ord.compare(one, a) > 0) return "1 is not least, " + where;
    return {};
  });
}

CheckResult ring_axioms(std::uint64_t seed, int count) {
  return suite("ring axioms vs evaluation", seed, count, [](RandomInstances& gen) -> std::string {
    const std::uint32_t p = gen.prime({2, 3, 5, 7, 11, 101});
    const std::size_t n = 1 + gen.below(3);
    const auto R = gen.ring(p, n, random_order(gen, n));
    const auto f = gen.polynomial(R, 4, 3), g = gen.polynomial(R, 4, 3), h = gen.polynomial(R, 4, 3);
    const auto& F = R->field();
    const std::string where = " f=" + f.to_string() + " g=" + g.to_string() + " h=" + h.to_string();
    if ((f + g) + h != f + (g + h)) return "addition not associative," + where;
    if ((f * g) * h != f * (g * h)) return "multiplication not associative," + where;
    if (f * (g + h) != f * g + f * h) return "not distributive," + where;
    if (f + g != g + f || f * g != g * f) return "not commutative," + where;
    if (!(f - f).is_zero()) return "f - f != 0," + where;
    const auto pt = gen.point(R);
    if ((f + g).evaluate(pt) != F.add(f.evaluate(pt), g.evaluate(pt))) return "sum disagrees with evaluation," + where;
    if ((f * g).evaluate(pt) != F.mul(f.evaluate(pt), g.evaluate(pt)))
      return "product disagrees with evaluation," + where;
    if (parse_poly(f.to_string(), R) != f) return "printing does not round-trip," + where;
    return {};
  });
}

CheckResult freshmans_dream(std::uint64_t seed, int count) {
  return suite("freshman's dream", seed, count, [](RandomInstances& gen) -> std::string {
    const std::uint32_t p = gen.prime({2, 3, 5, 7});
    const std::uint32_t e = p <= 5 ? 1 + static_cast<std::uint32_t>(gen.below(2)) : 1;
    const std::uint64_t q = checked_pow(p, e);
    const auto R = gen.ring(p, 1 + gen.below(2));
    const auto f = gen.polynomial(R, 3, 2), g = gen.polynomial(R, 3, 2);
    const std::string where = " p=" + std::to_string(p) + " q=" + std::to_string(q) + " f=" + f.to_string() +
                              " g=" + g.to_string();
    if ((f + g).pow(q) != f.pow(q) + g.pow(q)) return "(f+g)^q != f^q + g^q," + where;
    if (f.pow(q) != frobenius_power(f, q)) return "pow and termwise Frobenius differ," + where;
    return {};
  });
}

CheckResult bracket_power_laws(std::uint64_t seed, int count) {
  return suite("bracket-power laws", seed, count, [](RandomInstances& gen) -> std::string {
    const std::uint32_t p = gen.prime({2, 3, 5});
    const auto R = gen.ring(p, 2 + gen.below(2));
    const Ideal I = gen.ideal(R, 2, 3, 2, true), J = gen.ideal(R, 2, 3, 2, true);
    const std::string where = " p=" + std::to_string(p) + " I=" + I.to_string() + " J=" + J.to_string();
    const Ideal Ip = bracket_power(I, p);
    if (!same_ideal(bracket_power(Ip, p), bracket_power(I, std::uint64_t{p} * p)))
      return "(I^[p])^[p] != I^[p^2]," + where;
    if (!same_ideal(bracket_power(I + J, p), Ip + bracket_power(J, p))) return "(I+J)^[p] != I^[p]+J^[p]," + where;
    if (!same_ideal(bracket_power(I * J, p), Ip * bracket_power(J, p))) return "(IJ)^[p] != I^[p]J^[p]," + where;
    if (!I.contains(Ip)) return "I^[p] not inside I," + where;
    // the ideal does not depend on the generating set
    const Ideal I2(R, {I.gens()[0], I.gens()[0] + (I.gens().size() > 1 ? I.gens()[1] : I.gens()[0] * I.gens()[0])});
    const Ideal sum = I + I2;
    if (!same_ideal(bracket_power(sum, p), Ip + bracket_power(I2, p))) return "bracket depends on generators," + where;
    return {};
  });
}

CheckResult sandwich_inclusions(std::uint64_t seed, int count) {
  return suite("sandwich I^{sq} in I^[q] in I^q", seed, count, [](RandomInstances& gen) -> std::string {
    const std::uint32_t p = gen.prime({2, 3});
    const auto R = gen.ring(p, 2);
    const Ideal I = gen.ideal(R, 2, 2, 2, true);
    const std::uint64_t s = I.gens().size();
    const std::string where = " p=" + std::to_string(p) + " I=" + I.to_string();
    const Ideal bracket = bracket_power(I, p);
    if (!power(I, p).contains(bracket)) return "I^[q] not inside I^q," + where;
    if (!bracket.contains(power(I, s * p))) return "I^{sq} not inside I^[q]," + where;
    return {};
  });
}

CheckResult groebner_certificates(std::uint64_t seed, int count) {
  return suite("Groebner S-pair certificates", seed, count, [](RandomInstances& gen) -> std::string {
    const std::uint32_t p = gen.prime({2, 3, 5, 7, 31});
    const std::size_t n = 2 + gen.below(2);
    const auto R = gen.ring(p, n, random_order(gen, n));
    const Ideal I = gen.ideal(R, 3, 3, 3);
    const std::string where = " order=" + R->order().name() + " I=" + I.to_string();
    const auto& G = I.groebner_basis();
    if (!s_pairs_reduce_to_zero(G)) return "an S-pair does not reduce to zero," + where;
    if (!is_reduced_basis(G)) return "basis is not reduced," + where;
    for (const auto& g : I.gens())
      if (!reduce(g, G).is_zero()) return "generator " + g.to_string() + " does not reduce to zero," + where;
    // a second order must describe the same ideal
    const Ideal other = groebner(I, R->order().kind() == MonomialOrder::Kind::Lex ? MonomialOrder::grevlex()
                                                                                  : MonomialOrder::lex());
    for (const auto& g : other.groebner_basis()) {
      std::vector<std::size_t> id(n);
      for (std::size_t i = 0; i < n; ++i) id[i] = i;
      if (!reduce(g.map_to(R, id), G).is_zero()) return "bases in two orders disagree," + where;
    }
    return {};
  });
}

CheckResult colon_property(std::uint64_t seed, int count) {
  return suite("colon defining property", seed, count, [](RandomInstances& gen) -> std::string {
    const std::uint32_t p = gen.prime({2, 3, 5, 7});
    const auto R = gen.ring(p, 2 + gen.below(2));
    const Ideal I = gen.ideal(R, 3, 2, 2, true);
    const Polynomial g = gen.polynomial(R, 2, 2, true);
    const std::string where = " I=" + I.to_string() + " g=" + g.to_string();
    const Ideal K = colon(I, g);
    if (!K.contains(I)) return "I not inside (I:g)," + where;
    for (const auto& k : K.gens())
      if (!I.contains(k * g)) return "g*" + k.to_string() + " not in I," + where;
    for (int trial = 0; trial < 3; ++trial) {
      Polynomial h = gen.polynomial(R, 3, 3);
      if (!K.gens().empty() && trial == 0) h = K.gens()[gen.below(K.gens().size())] * h;
      if (K.contains(h) != I.contains(h * g)) return "membership of " + h.to_string() + " is inconsistent," + where;
    }
    return {};
  });
}

CheckResult node_additivity(std::uint64_t seed, int count) {
  return suite("node additivity", seed, count, [](RandomInstances& gen) -> std::string {
    const std::uint32_t p = gen.prime({2, 3, 5, 7});
    const std::uint32_t e = 1 + static_cast<std::uint32_t>(gen.below(3));
    const auto R = gen.ring(p, 2);
    const auto& F = R->field();
    // two independent lines through a random point
    Fp a, b, c, d;
    do {
      a = gen.element(F), b = gen.element(F), c = gen.element(F), d = gen.element(F);
    } while (F.sub(F.mul(a, d), F.mul(b, c)).value == 0);
    const auto pt = gen.point(R);
    const auto x = Polynomial::variable(R, 0) - Polynomial::constant(R, pt[0]);
    const auto y = Polynomial::variable(R, 1) - Polynomial::constant(R, pt[1]);
    const auto l1 = x.scale(a) + y.scale(b), l2 = x.scale(c) + y.scale(d);
    const std::string where = " p=" + std::to_string(p) + " e=" + std::to_string(e) + " lines " + l1.to_string() +
                              ", " + l2.to_string();
    const auto lam = [&](std::vector<Polynomial> gens) {
      return hk_function(LocalRingAtPoint(Ideal(R, std::move(gens)), pt), e).lambda;
    };
    const std::uint64_t both = lam({l1 * l2}), first = lam({l1}), second = lam({l2});
    const std::uint64_t q = checked_pow(p, e);
    if (both != first + second - 1) return "lambda_xy != lambda_x + lambda_y - 1," + where;
    if (first != q || second != q) return "a line does not give q," + where;
    return {};
  });
}

std::vector<CheckResult> property_suites(std::uint64_t seed, int count) {
  return {order_axioms(seed, count),           ring_axioms(seed + 1, count),
          freshmans_dream(seed + 2, count),    bracket_power_laws(seed + 3, count),
          sandwich_inclusions(seed + 4, count), groebner_certificates(seed + 5, count),
          colon_property(seed + 6, count),      node_additivity(seed + 7, count)};
}

std::vector<CheckResult> golden_corpus() {
  std::vector<CheckResult> out;
  out.push_back(single("regular rings give q^d", [] {
    std::string f;
    auto A = origin_ring("x,y", {}, 5);
    for (std::uint32_t e = 1; e <= 3; ++e)
      f += expect_eq("F_5[x,y] lambda_" + std::to_string(e), hk_function(A, e).lambda, checked_pow(25, e));
    auto B = origin_ring("x,y,z", {}, 7);
    for (std::uint32_t e = 1; e <= 2; ++e)
      f += expect_eq("F_7[x,y,z] lambda_" + std::to_string(e), hk_function(B, e).lambda, checked_pow(343, e));
    return verdict(f, "lambda = q^d");
  }));
  out.push_back(single("node xy gives 2q - 1", [] {
    std::string f;
    for (std::uint32_t p : {3u, 5u, 7u}) {
      auto L = origin_ring("x,y", {"x*y"}, p);
      for (std::uint32_t e = 1; e <= 3; ++e)
        f += expect_eq("p=" + std::to_string(p) + " lambda_" + std::to_string(e), hk_function(L, e).lambda,
                       2 * checked_pow(p, e) - 1);
    }
    return verdict(f, "lambda = 2q - 1 for p in {3,5,7}, e <= 3");
  }));
  out.push_back(single("A1 = (xy - z^2) lengths", [] {
    std::string f;
    for (std::uint32_t p : {5u, 7u}) {
      auto L = origin_ring("x,y,z", {"x*y - z^2"}, p);
      for (std::uint32_t e = 1; e <= 2; ++e) {
        const std::uint64_t q = checked_pow(p, e);
        f += expect_eq("p=" + std::to_string(p) + " lambda_" + std::to_string(e), hk_function(L, e).lambda,
                       (3 * q * q - 1) / 2);
        f += expect_eq("p=" + std::to_string(p) + " a_" + std::to_string(e), splitting_number(L, e).a_e,
                       (q * q + 1) / 2);
      }
    }
    return verdict(f, "lambda = (3q^2-1)/2, a_e = (q^2+1)/2");
  }));
  out.push_back(single("Fermat cubic F-purity", [] {
    auto L5 = origin_ring("x,y,z", {"x^3 + y^3 + z^3"}, 5);
    auto L7 = origin_ring("x,y,z", {"x^3 + y^3 + z^3"}, 7);
    std::string f;
    if (fedder_is_fpure(L5)) f += "p=5 reported F-pure; ";
    if (!fedder_is_fpure(L7)) f += "p=7 reported not F-pure; ";
    f += expect_eq("p=5 a_1", splitting_number(L5, 1).a_e, 0);
    if (splitting_number(L7, 1).a_e == 0) f += "p=7 a_1 = 0; ";
    return verdict(f, "F-pure at 7, not at 5");
  }));
  out.push_back(single("F_p x F_p global e_HK", [] {
    PrimeField F(7);
    auto R0 = make_ring(F, {});
    RingPresentation R({{"a", Ideal::zero(R0), std::nullopt}, {"b", Ideal::zero(R0), std::nullopt}});
    auto g = global_hk(R, {{0, {}, false, "a"}, {1, {}, false, "b"}}, 2);
    std::string f;
    if (g.value.value != Rational(1) || g.value.confidence != Confidence::Exact) f += "global e_HK != 1 exactly; ";
    if (g.gamma.z_components.size() != 2 || !g.gamma.z_is_spec) f += "both factors should lie in Z_R; ";
    return verdict(f, "global e_HK = 1, Z_R = Spec R");
  }));
  out.push_back(single("Z_R rule for F_p[x] x F_p", [] {
    PrimeField F(5);
    RingPresentation R({{"line", Ideal::zero(make_ring(F, {"x"})), std::nullopt},
                        {"pt", Ideal::zero(make_ring(F, {})), std::nullopt}});
    auto g = global_fsig(R, {{0, {Fp{0}}, false, "o"}, {1, {}, false, "pt"}}, 2);
    return verdict(g.value.value == Rational(0) && g.z_rule_applied ? "" : "global s != 0; ", "global s = 0 exactly");
  }));
  out.push_back(single("HL near-equality on A1", [] {
    auto L = origin_ring("x,y,z", {"x*y - z^2"}, 7);
    auto d = classify(L, 2);
    std::string f;
    if (d.hl != HlStatus::Satisfied) f += "HL status " + std::string(hl_status_name(d.hl)) + "; ";
    if (std::abs(d.hl_lhs - d.hl_rhs) > 0.05) f += "|LHS - RHS| > 0.05; ";
    return verdict(f, "LHS " + std::to_string(d.hl_lhs) + ", RHS " + std::to_string(d.hl_rhs));
  }));
  out.push_back(single("pair at t = 0 is the splitting number", [] {
    auto L = origin_ring("x,y,z", {"x*y - z^2"}, 5);
    Ideal a(L.ring(), {parse_poly("x", L.ring()), parse_poly("y", L.ring())});
    std::string f;
    for (std::uint32_t e = 1; e <= 2; ++e)
      f += expect_eq("a_" + std::to_string(e), pair_splitting_number(L, a, Rational(0), e).a_e,
                     splitting_number(L, e).a_e);
    return verdict(f, "agree for e <= 2");
  }));
  return out;
}

int run(std::ostream& out, int count, std::uint64_t seed) {
  int failures = 0;
  auto report = [&](const char* group, const std::vector<CheckResult>& checks) {
    for (const auto& c : checks) {
      out << (c.passed ? "PASS " : "FAIL ") << group << ": " << c.name << " (" << c.detail << ")\n";
      if (!c.passed) ++failures;
    }
  };
  report("corpus", golden_corpus());
  report("property", property_suites(seed, count));
  out << (failures == 0 ? "selftest passed\n" : "selftest FAILED: " + std::to_string(failures) + " check(s)\n");
  return failures == 0 ? 0 : 1;
}

}  // namespace charp::selftest
