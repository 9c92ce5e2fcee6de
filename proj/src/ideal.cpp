#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>
#include <string>

#include "charp/ideal.hpp"
#include "charp/kernels.hpp"

namespace charp {

Ideal::Ideal(RingPtr ring, std::vector<Polynomial> gens) : ring_(std::move(ring)), gens_(std::move(gens)) {
  for (const auto& g : gens_)
    if (!g.ring()->compatible(*ring_))
      throw Error(ErrorKind::InvalidArgument, "ideal generator lives in a different ring");
}

Ideal Ideal::unit(RingPtr ring) {
  auto one = Polynomial::one(ring);
  return Ideal(std::move(ring), {one});
}

Ideal Ideal::maximal_at_origin(RingPtr ring) {
  std::vector<Polynomial> gens;
  for (std::size_t i = 0; i < ring->nvars(); ++i) gens.push_back(Polynomial::variable(ring, i));
  return Ideal(std::move(ring), std::move(gens));
}

Ideal Ideal::maximal_at(RingPtr ring, std::span<const Fp> point) {
  std::vector<Polynomial> gens;
  for (std::size_t i = 0; i < ring->nvars(); ++i)
    gens.push_back(Polynomial::variable(ring, i) - Polynomial::constant(ring, point[i]));
  return Ideal(std::move(ring), std::move(gens));
}

Ideal Ideal::frobenius_box(RingPtr ring, std::uint64_t q) {
  if (q > std::numeric_limits<std::uint32_t>::max())
    throw Error(ErrorKind::ExponentOverflow, "bracket exponent exceeds 32 bits");
  std::vector<Polynomial> gens;
  for (std::size_t i = 0; i < ring->nvars(); ++i)
    gens.push_back(Polynomial::monomial(ring, Fp{1},
                                        Monomial::variable(ring->nvars(), i, static_cast<std::uint32_t>(q))));
  return Ideal(std::move(ring), std::move(gens));
}

const std::vector<Polynomial>& Ideal::groebner_basis(const Budget& budget) const {
  std::lock_guard lock(cache_->mu);
  if (!cache_->ready) {
    cache_->basis = reduced_groebner_basis(gens_, budget);
    cache_->ready = true;
  }
  return cache_->basis;
}

bool Ideal::has_groebner_basis() const noexcept {
  std::lock_guard lock(cache_->mu);
  return cache_->ready;
}

Polynomial Ideal::normal_form(const Polynomial& f, const Budget& budget) const {
  return reduce(f, groebner_basis(budget));
}

bool Ideal::contains(const Polynomial& f, const Budget& budget) const { return normal_form(f, budget).is_zero(); }

bool Ideal::contains(const Ideal& other, const Budget& budget) const {
  return std::all_of(other.gens_.begin(), other.gens_.end(),
                     [&](const Polynomial& g) { return contains(g, budget); });
}

bool Ideal::is_unit(const Budget& budget) const {
  const auto& gb = groebner_basis(budget);
  return gb.size() == 1 && gb.front().is_constant() && !gb.front().is_zero();
}

bool Ideal::is_zero() const noexcept {
  return std::all_of(gens_.begin(), gens_.end(), [](const Polynomial& g) { return g.is_zero(); });
}

std::vector<Monomial> Ideal::leading_monomials(const Budget& budget) const {
  std::vector<Monomial> out;
  for (const auto& g : groebner_basis(budget)) out.push_back(g.lead_monomial());
  return out;
}

std::string Ideal::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (i != 0) s += ", ";
    s += gens_[i].to_string();
  }
  return s + ")";
}

namespace {

std::vector<std::size_t> identity_map(std::size_t n) {
  std::vector<std::size_t> m(n);
  std::iota(m.begin(), m.end(), 0);
  return m;
}

// S[t] with t first, eliminated by a block order.
RingPtr elimination_ring(const RingPtr& ring) {
  std::vector<std::string> vars{"_elim_t"};
  for (const auto& v : ring->vars()) vars.push_back(v);
  return make_ring(ring->field(), std::move(vars), MonomialOrder::elimination(1));
}

}  // namespace

Ideal groebner(const Ideal& I, MonomialOrder order, const Budget& budget) {
  RingPtr target = with_order(I.ring(), order);
  auto map = identity_map(I.ring()->nvars());
  std::vector<Polynomial> gens;
  for (const auto& g : I.gens()) gens.push_back(g.map_to(target, map));
  Ideal out(target, std::move(gens));
  out.groebner_basis(budget);
  return out;
}

Ideal operator+(const Ideal& I, const Ideal& J) {
  std::vector<Polynomial> gens(I.gens().begin(), I.gens().end());
  gens.insert(gens.end(), J.gens().begin(), J.gens().end());
  return Ideal(I.ring(), std::move(gens));
}

Ideal operator*(const Ideal& I, const Ideal& J) {
  std::vector<Polynomial> gens;
  for (const auto& f : I.gens())
    for (const auto& g : J.gens()) {
      Polynomial h = f * g;
      if (!h.is_zero()) gens.push_back(std::move(h));
    }
  return Ideal(I.ring(), std::move(gens));
}

Ideal power(const Ideal& I, std::uint64_t n) {
  Ideal result = Ideal::unit(I.ring());
  Ideal base = I;
  while (n != 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n != 0) base = base * base;
  }
  return result;
}

Ideal translate(const Ideal& I, std::span<const Fp> shift) {
  std::vector<Polynomial> gens;
  for (const auto& g : I.gens()) gens.push_back(g.translate(shift));
  return Ideal(I.ring(), std::move(gens));
}

bool same_ideal(const Ideal& I, const Ideal& J, const Budget& budget) {
  return I.contains(J, budget) && J.contains(I, budget);
}

Ideal intersect(const Ideal& I, const Ideal& J, const Budget& budget) {
  const RingPtr& ring = I.ring();
  if (I.is_zero() || J.is_zero()) return Ideal::zero(ring);
  RingPtr big = elimination_ring(ring);
  std::vector<std::size_t> shift(ring->nvars());
  std::iota(shift.begin(), shift.end(), 1);
  const Polynomial t = Polynomial::variable(big, 0);
  const Polynomial one_minus_t = Polynomial::one(big) - t;
  std::vector<Polynomial> gens;
  for (const auto& f : I.gens())
    if (!f.is_zero()) gens.push_back(t * f.map_to(big, shift));
  for (const auto& g : J.gens())
    if (!g.is_zero()) gens.push_back(one_minus_t * g.map_to(big, shift));
  auto gb = reduced_groebner_basis(gens, budget);

  // t-free elements generate the intersection
  std::vector<std::size_t> unshift(big->nvars());
  unshift[0] = 0;
  for (std::size_t i = 1; i < big->nvars(); ++i) unshift[i] = i - 1;
  std::vector<Polynomial> out;
  for (const auto& g : gb) {
    if (g.lead_monomial()[0] != 0) continue;
    out.push_back(g.map_to(ring, unshift));
  }
  return Ideal(ring, std::move(out));
}

Ideal colon(const Ideal& I, const Polynomial& g, const Budget& budget) {
  if (g.is_zero()) return Ideal::unit(I.ring());
  if (I.is_zero()) return Ideal::zero(I.ring());
  if (g.is_constant()) return I;
  Ideal meet = intersect(I, Ideal(I.ring(), {g}), budget);
  std::vector<Polynomial> gens;
  for (const auto& h : meet.gens()) gens.push_back(exact_divide(h, g));
  return Ideal(I.ring(), std::move(gens));
}

Ideal colon(const Ideal& I, const Ideal& J, const Budget& budget) {
  std::vector<const Polynomial*> nonzero;
  for (const auto& g : J.gens())
    if (!g.is_zero()) nonzero.push_back(&g);
  if (nonzero.empty()) return Ideal::unit(I.ring());
  Ideal acc = colon(I, *nonzero.front(), budget);
  for (std::size_t k = 1; k < nonzero.size(); ++k) {
    if (acc.is_unit(budget)) {
      acc = colon(I, *nonzero[k], budget);
      continue;
    }
    Ideal next = colon(I, *nonzero[k], budget);
    if (next.is_unit(budget)) continue;
    acc = intersect(acc, next, budget);
  }
  return acc;
}

std::uint32_t log_p(std::uint64_t q, std::uint32_t p) {
  std::uint32_t e = 0;
  std::uint64_t v = q;
  while (v > 1 && v % p == 0) {
    v /= p;
    ++e;
  }
  if (q == 0 || v != 1)
    throw Error(ErrorKind::NotAPowerOfP, std::to_string(q) + " is not a power of " + std::to_string(p));
  return e;
}

Polynomial frobenius_power(const Polynomial& f, std::uint64_t q) {
  (void)log_p(q, f.field().characteristic());
  std::vector<Term> terms;
  terms.reserve(f.size());
  for (const auto& t : f.terms()) terms.push_back({t.coeff, t.mono.pow(q)});
  // c^q = c in F_p and q-th powering preserves the order of monomials
  return Polynomial::from_terms(f.ring(), std::move(terms));
}

Ideal bracket_power(const Ideal& I, std::uint64_t q) {
  (void)log_p(q, I.ring()->field().characteristic());
  std::vector<Polynomial> gens;
  for (const auto& g : I.gens()) gens.push_back(frobenius_power(g, q));
  return Ideal(I.ring(), std::move(gens));
}

std::optional<std::uint64_t> length(const Ideal& J, const Budget& budget) {
  auto lead = J.leading_monomials(budget);
  if (lead.empty()) {
    if (J.ring()->nvars() == 0) return 1;
    return std::nullopt;
  }
  auto n = kernels::count_standard_monomials(lead, J.ring()->nvars(), budget.max_monomials);
  if (n) budget.note_monomials(*n);
  return n;
}

StandardMonomialBasis standard_monomials(const Ideal& J, const Budget& budget) {
  const auto lead = kernels::minimalize(J.leading_monomials(budget));
  const std::size_t n = J.ring()->nvars();
  StandardMonomialBasis out;
  const bool unit = !lead.empty() && lead.front().is_one();
  if (!unit && n != 0 && !kernels::pure_power_bounds(lead, n)) return out;
  out.monomials = kernels::enumerate_standard_monomials(lead, n, budget.max_monomials);
  const auto& ord = J.ring()->order();
  std::sort(out.monomials.begin(), out.monomials.end(),
            [&](const Monomial& a, const Monomial& b) { return ord.less(a, b); });
  out.is_finite = true;
  return out;
}

int krull_dim(const Ideal& I, const Budget& budget) {
  if (I.is_unit(budget)) throw Error(ErrorKind::UnitIdeal, "dimension of the zero ring is undefined");
  const std::size_t n = I.ring()->nvars();
  std::vector<std::uint32_t> supports;
  for (const auto& m : kernels::minimalize(I.leading_monomials(budget))) {
    std::uint32_t mask = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (m[i] != 0) mask |= 1u << i;
    supports.push_back(mask);
  }
  int best = 0;
  for (std::uint32_t U = 0; U < (1u << n); ++U) {
    int size = std::popcount(U);
    if (size <= best) continue;
    bool independent = std::none_of(supports.begin(), supports.end(), [&](std::uint32_t s) { return (s & ~U) == 0; });
    if (independent) best = size;
  }
  return best;
}

std::optional<std::vector<Fp>> rational_point_of(const Ideal& m, const Budget& budget) {
  const RingPtr& ring = m.ring();
  const std::size_t n = ring->nvars();
  Ideal lexm = groebner(m, MonomialOrder::lex(), budget);
  const auto& gb = lexm.groebner_basis(budget);
  if (gb.size() != n) return std::nullopt;
  std::vector<Fp> point(n);
  std::vector<bool> seen(n, false);
  for (const auto& g : gb) {
    // each element must be x_i - a_i
    int v = g.lead_monomial().pure_power_variable();
    if (v < 0 || g.lead_monomial().degree() != 1 || g.size() > 2) return std::nullopt;
    if (g.size() == 2 && !g.terms()[1].mono.is_one()) return std::nullopt;
    point[v] = g.size() == 2 ? ring->field().neg(g.terms()[1].coeff) : Fp{0};
    seen[v] = true;
  }
  if (!std::all_of(seen.begin(), seen.end(), [](bool b) { return b; })) return std::nullopt;
  return point;
}

HilbertSamuelResult hilbert_samuel(const Ideal& I, const Ideal& m, int n_max, const Budget& budget) {
  auto point = rational_point_of(m, budget);
  if (!point) throw Error(ErrorKind::InvalidArgument, "m is not a rational maximal ideal");
  if (!m.contains(I, budget)) throw Error(ErrorKind::InvalidArgument, "I is not contained in m");
  const RingPtr& ring = I.ring();
  Ideal I0 = translate(I, std::vector<Fp>(point->begin(), point->end()));
  // translate maps x -> x + a, i.e. moves the point a to the origin
  HilbertSamuelResult out;
  out.dim = krull_dim(I0, budget);
  const Ideal maximal = Ideal::maximal_at_origin(ring);
  for (int n = 1; n <= n_max; ++n) {
    auto len = length(I0 + power(maximal, static_cast<std::uint64_t>(n)), budget);
    out.lengths.push_back(*len);
  }
  // d-th difference table
  std::vector<std::int64_t> diff(out.lengths.begin(), out.lengths.end());
  for (int k = 0; k < out.dim; ++k) {
    if (diff.size() < 2) break;
    for (std::size_t i = 0; i + 1 < diff.size(); ++i) diff[i] = diff[i + 1] - diff[i];
    diff.pop_back();
  }
  const std::size_t need = 3;
  if (diff.size() < need)
    throw Error(ErrorKind::NotStabilized, "n_max = " + std::to_string(n_max) + " too small for dimension " +
                                              std::to_string(out.dim));
  const std::int64_t last = diff.back();
  bool stable = last > 0 && std::all_of(diff.end() - need, diff.end(), [&](std::int64_t v) { return v == last; });
  if (!stable)
    throw Error(ErrorKind::NotStabilized,
                "difference table not constant up to n_max = " + std::to_string(n_max));
  out.multiplicity = Rational(last);
  out.exact = true;
  return out;
}

}  // namespace charp
