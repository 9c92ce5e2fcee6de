#include <algorithm>
#include <set>
#include <string>
#include <unordered_map>

#include <boost/container_hash/hash.hpp>

#include "charp/ideal.hpp"

namespace charp {

namespace {

// Max-heap of distinct monomials with coefficients merged on push, so the
// live size is bounded by the number of distinct monomials in flight.
class TermHeap {
  struct Less {
    const MonomialOrder* ord;
    bool operator()(const Monomial& a, const Monomial& b) const { return ord->compare(a, b) < 0; }
  };
  struct Hash {
    std::size_t operator()(const Monomial& m) const noexcept {
      return boost::hash_range(m.exponents().begin(), m.exponents().end());
    }
  };
  Less cmp() const { return Less{&ord_}; }

 public:
  explicit TermHeap(const PolyRing& ring) : ord_(ring.order()), F_(ring.field()) {}

  void push(Fp c, const Monomial& m) {
    auto [it, fresh] = coeffs_.try_emplace(m, c);
    if (!fresh) {
      it->second = F_.add(it->second, c);
      return;
    }
    heap_.push_back(m);
    std::push_heap(heap_.begin(), heap_.end(), cmp());
  }
  bool empty() const noexcept { return heap_.empty(); }
  std::size_t size() const noexcept { return heap_.size(); }

  // Largest monomial with its combined coefficient (possibly zero).
  Term pop() {
    std::pop_heap(heap_.begin(), heap_.end(), cmp());
    Term t{Fp{0}, std::move(heap_.back())};
    heap_.pop_back();
    auto it = coeffs_.find(t.mono);
    t.coeff = it->second;
    coeffs_.erase(it);
    return t;
  }

 private:
  const MonomialOrder& ord_;
  const PrimeField& F_;
  std::vector<Monomial> heap_;
  std::unordered_map<Monomial, Fp, Hash> coeffs_;
};

const Polynomial* find_reducer(const Monomial& m, std::span<const Polynomial> basis) {
  for (const auto& g : basis)
    if (!g.is_zero() && g.lead_monomial().degree() <= m.degree() && g.lead_monomial().divides(m)) return &g;
  return nullptr;
}

Polynomial reduce_with(const Polynomial& f, std::span<const Polynomial> basis, std::span<const Polynomial* const> extra,
                       const Budget* budget = nullptr) {
  if (f.is_zero()) return f;
  const auto& ring = *f.ring();
  const auto& F = ring.field();
  TermHeap heap(ring);
  for (const auto& t : f.terms()) heap.push(t.coeff, t.mono);
  std::vector<Term> rem;
  while (!heap.empty()) {
    Term t = heap.pop();
    if (t.coeff.value == 0) continue;
    const Polynomial* g = find_reducer(t.mono, basis);
    if (g == nullptr)
      for (const Polynomial* e : extra)
        if (e->lead_monomial().divides(t.mono)) {
          g = e;
          break;
        }
    if (g == nullptr) {
      rem.push_back(std::move(t));
      continue;
    }
    const Fp c = F.neg(F.div(t.coeff, g->lead_coeff()));
    const Monomial m = t.mono.quotient(g->lead_monomial());
    auto gt = g->terms();
    for (std::size_t k = 1; k < gt.size(); ++k) heap.push(F.mul(c, gt[k].coeff), gt[k].mono * m);
    if (budget && heap.size() + rem.size() > budget->max_monomials)
      throw Error(ErrorKind::ResourceBudgetExceeded,
                  "intermediate polynomial exceeds " + std::to_string(budget->max_monomials) + " terms");
  }
  return Polynomial::from_terms(f.ring(), std::move(rem));
}

// `sugar` is the degree the pair would have in the homogenized computation;
// selecting by it keeps non-degree orders such as lex from drifting into
// high-degree reductions.
struct Pair {
  Monomial lcm;
  std::uint64_t sugar;
  std::size_t i, j;
};

class Buchberger {
 public:
  Buchberger(RingPtr ring, const Budget& budget)
      : ring_(std::move(ring)), budget_(budget), pairs_(PairLess{&ring_->order()}) {}

  void add_input(const Polynomial& f) {
    Polynomial h = reduce_with(f, basis_, {}, &budget_);
    if (!h.is_zero()) insert(h.monic(), f.total_degree());
  }

  void run() {
    while (!pairs_.empty()) {
      Pair pr = *pairs_.begin();
      pairs_.erase(pairs_.begin());
      budget_.note_pairs(1);
      if (++processed_ > budget_.max_pairs)
        throw Error(ErrorKind::ResourceBudgetExceeded,
                    "Groebner pair count exceeds " + std::to_string(budget_.max_pairs));
      Polynomial h = reduce_with(s_polynomial(basis_[pr.i], basis_[pr.j]), basis_, {}, &budget_);
      if (!h.is_zero()) insert(h.monic(), pr.sugar);
    }
  }

  std::vector<Polynomial> reduced() const {
    std::vector<Polynomial> live;
    for (std::size_t i = 0; i < basis_.size(); ++i)
      if (!redundant_[i]) live.push_back(basis_[i]);
    std::vector<Polynomial> out;
    out.reserve(live.size());
    for (std::size_t i = 0; i < live.size(); ++i) {
      std::vector<const Polynomial*> others;
      for (std::size_t j = 0; j < live.size(); ++j)
        if (j != i) others.push_back(&live[j]);
      const Polynomial& g = live[i];
      Polynomial head = Polynomial::monomial(g.ring(), g.lead_coeff(), g.lead_monomial());
      Polynomial tail = reduce_with(g - head, {}, others, &budget_);
      out.push_back(head + tail);
    }
    const auto& ord = ring_->order();
    std::sort(out.begin(), out.end(), [&](const Polynomial& a, const Polynomial& b) {
      return ord.compare(a.lead_monomial(), b.lead_monomial()) > 0;
    });
    return out;
  }

 private:
  struct PairLess {
    const MonomialOrder* ord;
    bool operator()(const Pair& a, const Pair& b) const {
      if (a.sugar != b.sugar) return a.sugar < b.sugar;
      if (int c = ord->compare(a.lcm, b.lcm); c != 0) return c < 0;
      if (a.i != b.i) return a.i < b.i;
      return a.j < b.j;
    }
  };

  // Gebauer-Moeller update for the new element h = basis_[t].
  void insert(Polynomial h, std::uint64_t sugar) {
    sugar = std::max(sugar, h.total_degree());
    basis_.push_back(std::move(h));
    redundant_.push_back(false);
    sugar_.push_back(sugar);
    const std::size_t t = basis_.size() - 1;
    budget_.note_basis(t + 1);
    if (t + 1 > budget_.max_basis)
      throw Error(ErrorKind::ResourceBudgetExceeded,
                  "Groebner basis size exceeds " + std::to_string(budget_.max_basis));
    const Monomial& lt = basis_[t].lead_monomial();

    struct Cand {
      std::size_t i;
      Monomial lcm;
      bool coprime;
    };
    std::vector<Cand> C;
    for (std::size_t i = 0; i < t; ++i)
      if (!redundant_[i]) {
        const Monomial& li = basis_[i].lead_monomial();
        C.push_back({i, li.lcm(lt), li.coprime(lt)});
      }
    std::vector<Cand> D;
    for (std::size_t k = 0; k < C.size(); ++k) {
      const Cand& c = C[k];
      bool keep = c.coprime;
      if (!keep) {
        keep = true;
        for (std::size_t r = k + 1; r < C.size() && keep; ++r)
          if (C[r].lcm.divides(c.lcm)) keep = false;
        for (std::size_t r = 0; r < D.size() && keep; ++r)
          if (D[r].lcm.divides(c.lcm)) keep = false;
      }
      if (keep) D.push_back(c);
    }

    for (auto it = pairs_.begin(); it != pairs_.end();) {
      const Monomial& L = it->lcm;
      if (lt.divides(L) && basis_[it->i].lead_monomial().lcm(lt) != L &&
          basis_[it->j].lead_monomial().lcm(lt) != L)
        it = pairs_.erase(it);
      else
        ++it;
    }
    for (const auto& c : D)
      if (!c.coprime) {
        const std::uint64_t s = std::max(sugar_[c.i] + c.lcm.degree() - basis_[c.i].lead_monomial().degree(),
                                         sugar_[t] + c.lcm.degree() - lt.degree());
        pairs_.insert(Pair{c.lcm, s, c.i, t});
      }

    for (std::size_t i = 0; i < t; ++i)
      if (!redundant_[i] && lt.divides(basis_[i].lead_monomial())) redundant_[i] = true;
  }

  RingPtr ring_;
  const Budget& budget_;
  std::vector<Polynomial> basis_;
  std::vector<bool> redundant_;
  std::vector<std::uint64_t> sugar_;
  std::set<Pair, PairLess> pairs_;
  std::uint64_t processed_ = 0;
};

}  // namespace

Polynomial reduce(const Polynomial& f, std::span<const Polynomial> basis) { return reduce_with(f, basis, {}); }

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g) {
  const auto& F = f.field();
  const Monomial L = f.lead_monomial().lcm(g.lead_monomial());
  Polynomial a = f.mul_term(F.inv(f.lead_coeff()), L.quotient(f.lead_monomial()));
  return a.sub_mul_term(F.inv(g.lead_coeff()), L.quotient(g.lead_monomial()), g);
}

std::vector<Polynomial> reduced_groebner_basis(std::span<const Polynomial> gens, const Budget& budget) {
  std::vector<Polynomial> nonzero;
  for (const auto& g : gens)
    if (!g.is_zero()) nonzero.push_back(g);
  if (nonzero.empty()) return {};
  for (const auto& g : nonzero)
    if (g.is_constant()) return {Polynomial::one(g.ring())};
  Buchberger bb(nonzero.front().ring(), budget);
  // smaller generators first keeps the early reductions cheap
  const auto& ord = nonzero.front().ring()->order();
  std::stable_sort(nonzero.begin(), nonzero.end(), [&](const Polynomial& a, const Polynomial& b) {
    return ord.compare(a.lead_monomial(), b.lead_monomial()) < 0;
  });
  for (const auto& g : nonzero) bb.add_input(g);
  bb.run();
  return bb.reduced();
}

bool s_pairs_reduce_to_zero(std::span<const Polynomial> basis) {
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j)
      if (!reduce(s_polynomial(basis[i], basis[j]), basis).is_zero()) return false;
  return true;
}

bool is_reduced_basis(std::span<const Polynomial> basis) {
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (basis[i].is_zero() || basis[i].lead_coeff().value != 1) return false;
    for (std::size_t j = 0; j < basis.size(); ++j) {
      if (i == j) continue;
      for (const auto& t : basis[i].terms())
        if (basis[j].lead_monomial().divides(t.mono)) return false;
    }
  }
  return true;
}

Polynomial exact_divide(const Polynomial& f, const Polynomial& g) {
  if (g.is_zero()) throw Error(ErrorKind::DivisionByZero, "division by the zero polynomial");
  const auto& ring = *f.ring();
  const auto& F = ring.field();
  TermHeap heap(ring);
  for (const auto& t : f.terms()) heap.push(t.coeff, t.mono);
  std::vector<Term> quotient;
  const Fp inv_lc = F.inv(g.lead_coeff());
  while (!heap.empty()) {
    Term t = heap.pop();
    if (t.coeff.value == 0) continue;
    if (!g.lead_monomial().divides(t.mono))
      throw Error(ErrorKind::InvalidArgument, "polynomial division leaves a remainder");
    const Fp c = F.mul(t.coeff, inv_lc);
    const Monomial m = t.mono.quotient(g.lead_monomial());
    auto gt = g.terms();
    for (std::size_t k = 1; k < gt.size(); ++k) heap.push(F.neg(F.mul(c, gt[k].coeff)), gt[k].mono * m);
    quotient.push_back({c, m});
  }
  return Polynomial::from_terms(f.ring(), std::move(quotient));
}

}  // namespace charp
