#include <algorithm>
#include <cassert>

#include "charp/poly.hpp"

namespace charp {

Polynomial Polynomial::constant(RingPtr ring, Fp c) {
  std::vector<Term> terms;
  if (c.value != 0) terms.push_back({c, Monomial(ring->nvars())});
  return Polynomial(std::move(ring), std::move(terms));
}

Polynomial Polynomial::variable(RingPtr ring, std::size_t i) {
  Monomial m = Monomial::variable(ring->nvars(), i);
  return Polynomial(std::move(ring), std::vector<Term>{{Fp{1}, m}});
}

Polynomial Polynomial::monomial(RingPtr ring, Fp c, Monomial m) {
  std::vector<Term> terms;
  if (c.value != 0) terms.push_back({c, std::move(m)});
  return Polynomial(std::move(ring), std::move(terms));
}

Polynomial Polynomial::from_terms(RingPtr ring, std::vector<Term> terms) {
  const auto& ord = ring->order();
  const auto& F = ring->field();
  auto descending = [&](const Term& a, const Term& b) { return ord.compare(a.mono, b.mono) > 0; };
  if (!std::is_sorted(terms.begin(), terms.end(), descending)) std::sort(terms.begin(), terms.end(), descending);
  std::vector<Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().mono == t.mono) {
      out.back().coeff = F.add(out.back().coeff, t.coeff);
    } else {
      if (!out.empty() && out.back().coeff.value == 0) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && out.back().coeff.value == 0) out.pop_back();
  return Polynomial(std::move(ring), std::move(out));
}

std::uint64_t Polynomial::total_degree() const noexcept {
  std::uint64_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.degree());
  return d;
}

namespace {

// Merges a + sign*b where both term lists are sorted descending.
std::vector<Term> merge(const PolyRing& ring, std::span<const Term> a, std::span<const Term> b, bool subtract) {
  const auto& ord = ring.order();
  const auto& F = ring.field();
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    int c = ord.compare(a[i].mono, b[j].mono);
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      out.push_back({subtract ? F.neg(b[j].coeff) : b[j].coeff, b[j].mono});
      ++j;
    } else {
      Fp s = subtract ? F.sub(a[i].coeff, b[j].coeff) : F.add(a[i].coeff, b[j].coeff);
      if (s.value != 0) out.push_back({s, a[i].mono});
      ++i;
      ++j;
    }
  }
  for (; i < a.size(); ++i) out.push_back(a[i]);
  for (; j < b.size(); ++j) out.push_back({subtract ? F.neg(b[j].coeff) : b[j].coeff, b[j].mono});
  return out;
}

}  // namespace

Polynomial Polynomial::operator+(const Polynomial& other) const {
  assert(ring_->compatible(*other.ring_));
  return Polynomial(ring_, merge(*ring_, terms_, other.terms_, false));
}

Polynomial Polynomial::operator-(const Polynomial& other) const {
  assert(ring_->compatible(*other.ring_));
  return Polynomial(ring_, merge(*ring_, terms_, other.terms_, true));
}

Polynomial Polynomial::operator-() const {
  std::vector<Term> out(terms_);
  for (auto& t : out) t.coeff = field().neg(t.coeff);
  return Polynomial(ring_, std::move(out));
}

Polynomial Polynomial::scale(Fp c) const {
  if (c.value == 0) return Polynomial(ring_);
  std::vector<Term> out(terms_);
  for (auto& t : out) t.coeff = field().mul(t.coeff, c);
  return Polynomial(ring_, std::move(out));
}

Polynomial Polynomial::mul_term(Fp c, const Monomial& m) const {
  if (c.value == 0) return Polynomial(ring_);
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) out.push_back({field().mul(t.coeff, c), t.mono * m});
  return Polynomial(ring_, std::move(out));
}

Polynomial Polynomial::sub_mul_term(Fp c, const Monomial& m, const Polynomial& g) const {
  assert(ring_->compatible(*g.ring_));
  const auto& ord = ring_->order();
  const auto& F = field();
  std::vector<Term> out;
  out.reserve(terms_.size() + g.terms_.size());
  const Fp negc = F.neg(c);
  std::size_t i = 0, j = 0;
  const auto& a = terms_;
  const auto& b = g.terms_;
  while (i < a.size() && j < b.size()) {
    Monomial bm = b[j].mono * m;
    int cmp = ord.compare(a[i].mono, bm);
    while (cmp > 0) {
      out.push_back(a[i++]);
      if (i == a.size()) break;
      cmp = ord.compare(a[i].mono, bm);
    }
    if (i < a.size() && cmp == 0) {
      Fp s = F.add(a[i].coeff, F.mul(negc, b[j].coeff));
      if (s.value != 0) out.push_back({s, std::move(bm)});
      ++i;
    } else {
      out.push_back({F.mul(negc, b[j].coeff), std::move(bm)});
    }
    ++j;
  }
  for (; i < a.size(); ++i) out.push_back(a[i]);
  for (; j < b.size(); ++j) out.push_back({F.mul(negc, b[j].coeff), b[j].mono * m});
  return Polynomial(ring_, std::move(out));
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
  assert(ring_->compatible(*other.ring_));
  if (is_zero() || other.is_zero()) return Polynomial(ring_);
  const Polynomial& small = size() <= other.size() ? *this : other;
  const Polynomial& big = size() <= other.size() ? other : *this;
  if (small.size() == 1) return big.mul_term(small.lead_coeff(), small.lead_monomial());
  std::vector<Term> all;
  all.reserve(small.size() * big.size());
  const auto& F = field();
  for (const auto& s : small.terms_)
    for (const auto& b : big.terms_) all.push_back({F.mul(s.coeff, b.coeff), s.mono * b.mono});
  return from_terms(ring_, std::move(all));
}

Polynomial Polynomial::monic() const {
  if (is_zero() || lead_coeff().value == 1) return *this;
  return scale(field().inv(lead_coeff()));
}

Polynomial Polynomial::pow(std::uint64_t n) const {
  Polynomial result = one(ring_);
  Polynomial base = *this;
  while (n != 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n != 0) base = base * base;
  }
  return result;
}

Fp Polynomial::evaluate(std::span<const Fp> point) const {
  const auto& F = field();
  Fp acc = F.zero();
  for (const auto& t : terms_) {
    Fp v = t.coeff;
    for (std::size_t i = 0; i < t.mono.nvars(); ++i)
      if (t.mono[i] != 0) v = F.mul(v, F.pow(point[i], t.mono[i]));
    acc = F.add(acc, v);
  }
  return acc;
}

Polynomial Polynomial::derivative(std::size_t var) const {
  const auto& F = field();
  std::vector<Term> out;
  for (const auto& t : terms_) {
    std::uint32_t e = t.mono[var];
    if (e == 0) continue;
    Fp c = F.mul(t.coeff, F.from_int(e));
    if (c.value == 0) continue;
    Monomial m = t.mono;
    m.set(var, e - 1);
    out.push_back({c, m});
  }
  return from_terms(ring_, std::move(out));
}

Polynomial Polynomial::translate(std::span<const Fp> shift) const {
  const std::size_t n = ring_->nvars();
  bool trivial = std::all_of(shift.begin(), shift.end(), [](Fp a) { return a.value == 0; });
  if (trivial) return *this;
  // powers of (x_i + a_i), computed lazily per variable
  std::vector<std::vector<Polynomial>> pows(n);
  auto power = [&](std::size_t i, std::uint32_t e) -> const Polynomial& {
    auto& cache = pows[i];
    if (cache.empty()) cache.push_back(one(ring_));
    const Polynomial lin = variable(ring_, i) + constant(ring_, shift[i]);
    while (cache.size() <= e) cache.push_back(cache.back() * lin);
    return cache[e];
  };
  Polynomial acc(ring_);
  for (const auto& t : terms_) {
    Polynomial prod = constant(ring_, t.coeff);
    for (std::size_t i = 0; i < n; ++i)
      if (t.mono[i] != 0) prod = prod * power(i, t.mono[i]);
    acc = acc + prod;
  }
  return acc;
}

Polynomial Polynomial::map_to(const RingPtr& target, std::span<const std::size_t> var_map) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Monomial m(target->nvars());
    for (std::size_t i = 0; i < t.mono.nvars(); ++i)
      if (t.mono[i] != 0) m.set(var_map[i], t.mono[i]);
    out.push_back({t.coeff, m});
  }
  return from_terms(target, std::move(out));
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    const auto& t = terms_[k];
    if (k != 0) s += " + ";
    bool wrote = false;
    if (t.coeff.value != 1 || t.mono.is_one()) {
      s += std::to_string(t.coeff.value);
      wrote = true;
    }
    for (std::size_t i = 0; i < t.mono.nvars(); ++i) {
      if (t.mono[i] == 0) continue;
      if (wrote) s += '*';
      s += ring_->vars()[i];
      if (t.mono[i] != 1) s += '^' + std::to_string(t.mono[i]);
      wrote = true;
    }
  }
  return s;
}

}  // namespace charp
