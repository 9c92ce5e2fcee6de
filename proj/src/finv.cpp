#include "charp/finv.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace charp {

namespace {

Rational ratio(std::uint64_t num, std::uint64_t den) {
  return Rational(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
}

std::uint64_t q_of(const LocalRingAtPoint& L, std::uint32_t e) { return checked_pow(L.characteristic(), e); }

std::uint64_t normalizer(const LocalRingAtPoint& L, std::uint64_t q) {
  return checked_pow(q, static_cast<std::uint32_t>(L.dim()));
}

// Drops every term lying in m^{[q]} = (x_1^q, ..., x_n^q).
Polynomial truncate_box(const Polynomial& f, std::uint64_t q) {
  std::vector<Term> kept;
  for (const auto& t : f.terms()) {
    bool inside = false;
    for (std::size_t i = 0; i < t.mono.nvars(); ++i)
      if (t.mono[i] >= q) inside = true;
    if (!inside) kept.push_back(t);
  }
  return Polynomial::from_terms(f.ring(), std::move(kept));
}

// F_p-subspace of S kept in row-echelon form by leading monomial. Callers
// feed it normal forms modulo a fixed ideal, so the span is a subspace of
// the quotient.
class LinearSpan {
 public:
  explicit LinearSpan(const RingPtr& ring)
      : ring_(ring), pivots_(Cmp{&ring->order()}) {}

  void insert(Polynomial f) {
    while (!f.is_zero()) {
      auto it = pivots_.find(f.lead_monomial());
      if (it == pivots_.end()) {
        f = f.monic();
        pivots_.emplace(f.lead_monomial(), basis_.size());
        basis_.push_back(std::move(f));
        return;
      }
      const Polynomial& b = basis_[it->second];
      f = f.sub_mul_term(f.lead_coeff(), Monomial(ring_->nvars()), b);
    }
  }

  const std::vector<Polynomial>& basis() const noexcept { return basis_; }
  bool empty() const noexcept { return basis_.empty(); }

 private:
  struct Cmp {
    const MonomialOrder* ord;
    bool operator()(const Monomial& a, const Monomial& b) const { return ord->less(a, b); }
  };
  RingPtr ring_;
  std::map<Monomial, std::size_t, Cmp> pivots_;
  std::vector<Polynomial> basis_;
};

template <typename Reducer>
std::vector<Polynomial> span_products(const std::vector<Polynomial>& A, const std::vector<Polynomial>& B,
                                      const RingPtr& ring, Reducer&& nf) {
  LinearSpan span(ring);
  for (const auto& u : A)
    for (const auto& v : B) span.insert(nf(u * v));
  return span.basis();
}

// Spanning set of the image of a^k in S/G where nf reduces modulo G.
template <typename Reducer>
std::vector<Polynomial> power_span(const Ideal& a, std::uint64_t k, Reducer&& nf) {
  const RingPtr& ring = a.ring();
  std::vector<Polynomial> result{nf(Polynomial::one(ring))};
  if (result.front().is_zero()) return {};
  LinearSpan gens(ring);
  for (const auto& g : a.gens()) gens.insert(nf(g));
  std::vector<Polynomial> base = gens.basis();
  while (k != 0) {
    if (k & 1) result = span_products(result, base, ring, nf);
    k >>= 1;
    if (k != 0) base = span_products(base, base, ring, nf);
    if (result.empty()) return {};
  }
  return result;
}

// (m^{[q]} : N) for N spanned by `gens`, after truncating them mod m^{[q]}.
Ideal box_colon(const LocalRingAtPoint& L, std::uint64_t q, const std::vector<Polynomial>& gens,
                const FinvOptions& opts) {
  LinearSpan span(L.ring());
  for (const auto& g : gens) span.insert(truncate_box(g, q));
  if (span.empty()) return Ideal::unit(L.ring());
  return colon(Ideal::frobenius_box(L.ring(), q), Ideal(L.ring(), span.basis()), opts.budget);
}

// lambda(S / (m^{[q]} : N)) = q^n - lambda(S / (N + m^{[q]})). S/m^{[q]} is
// Gorenstein Artinian, so Matlis duality turns the colon into a sum.
std::uint64_t box_colon_length(const LocalRingAtPoint& L, std::uint64_t q, const std::vector<Polynomial>& gens,
                               const FinvOptions& opts) {
  std::vector<Polynomial> all;
  for (const auto& g : gens)
    if (Polynomial t = truncate_box(g, q); !t.is_zero()) all.push_back(std::move(t));
  const std::uint64_t total = checked_pow(q, static_cast<std::uint32_t>(L.nvars()));
  if (all.empty()) return 0;
  Ideal B = Ideal::frobenius_box(L.ring(), q);
  all.insert(all.end(), B.gens().begin(), B.gens().end());
  // the complementary count lives inside the q^n box and is never enumerated
  Budget inner = opts.budget;
  inner.max_monomials = std::max(inner.max_monomials, total);
  return total - *length(Ideal(L.ring(), std::move(all)), inner);
}

// f^k with every intermediate product truncated mod m^{[q]}.
Polynomial pow_truncated(const Polynomial& f, std::uint64_t k, std::uint64_t q) {
  Polynomial result = Polynomial::one(f.ring());
  Polynomial base = truncate_box(f, q);
  while (k != 0) {
    if (k & 1) result = truncate_box(result * base, q);
    k >>= 1;
    if (k != 0) base = truncate_box(base * base, q);
  }
  return result;
}

// Generators of (I_0^{[q]} : I_0), reduced mod m^{[q]} when `truncate` is set.
// A principal I_0 = (f) gives (f^{q-1}) directly.
std::vector<Polynomial> trace_generators(const LocalRingAtPoint& L, std::uint64_t q, bool truncate,
                                         const FinvOptions& opts) {
  std::vector<Polynomial> nonzero;
  for (const auto& g : L.translated().gens())
    if (!g.is_zero()) nonzero.push_back(g);
  if (nonzero.empty()) return {Polynomial::one(L.ring())};
  if (nonzero.size() == 1) {
    if (truncate) return {pow_truncated(nonzero.front(), q - 1, q)};
    return {nonzero.front().pow(q - 1)};
  }
  Ideal J = colon(bracket_power(L.translated(), q), L.translated(), opts.budget);
  std::vector<Polynomial> gens;
  for (const auto& g : J.gens()) gens.push_back(truncate ? truncate_box(g, q) : g);
  return gens;
}

void require_e_max(std::uint32_t e_max) {
  if (e_max < 2) throw Error(ErrorKind::InvalidArgument, "limit estimates need e_max >= 2");
}

}  // namespace

double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

std::string_view confidence_name(Confidence c) {
  switch (c) {
    case Confidence::Exact: return "exact";
    case Confidence::Converged: return "converged";
    case Confidence::Inconclusive: return "inconclusive";
  }
  return "?";
}

std::string_view hl_status_name(HlStatus s) {
  switch (s) {
    case HlStatus::Satisfied: return "satisfied";
    case HlStatus::Violated: return "violated";
    case HlStatus::Vacuous: return "vacuous";
    case HlStatus::Unavailable: return "unavailable";
  }
  return "?";
}

LimitEstimate extrapolate(std::vector<Rational> values, std::vector<std::uint64_t> raw, std::uint32_t p,
                          double tolerance) {
  LimitEstimate est;
  est.e_used = static_cast<std::uint32_t>(values.size());
  for (std::size_t i = 1; i < values.size(); ++i) est.successive_diffs.push_back(values[i] - values[i - 1]);
  if (values.empty()) return est;
  const bool constant = std::all_of(values.begin(), values.end(), [&](const Rational& v) { return v == values[0]; });
  if (constant) {
    est.value = values.back();
    est.confidence = Confidence::Exact;
  } else {
    // value + c/q through (q_{E-1}, v_{E-1}) and (q_E, v_E) with q_E = p q_{E-1}
    const Rational& last = values[values.size() - 1];
    const Rational& prev = values[values.size() - 2];
    est.value = (Rational(p) * last - prev) / Rational(p - 1);
    const double gap = std::abs(to_double(last - prev));
    est.confidence = gap < tolerance ? Confidence::Converged : Confidence::Inconclusive;
  }
  est.values = std::move(values);
  est.raw = std::move(raw);
  return est;
}

HKRecord hk_function(const LocalRingAtPoint& L, std::uint32_t e, const std::optional<Ideal>& J,
                     const FinvOptions& opts) {
  const std::uint64_t q = q_of(L, e);
  Ideal J0 = J ? L.localize(*J) : L.maximal();
  Ideal quotient = L.translated() + bracket_power(J0, q);
  auto lambda = length(quotient, opts.budget);
  if (!lambda) throw Error(ErrorKind::NotPrimary, "J^{[q]} + I has infinite colength");
  if (J) {
    // the length is only local when the quotient is supported at the origin
    for (std::size_t i = 0; i < L.nvars(); ++i) {
      Polynomial xi = Polynomial::variable(L.ring(), i);
      if (!quotient.contains(xi.pow(*lambda), opts.budget))
        throw Error(ErrorKind::NotPrimary, "J is not primary to the point modulo I");
    }
  }
  HKRecord rec;
  rec.e = e;
  rec.q = q;
  rec.lambda = *lambda;
  rec.normalized = ratio(rec.lambda, normalizer(L, q));
  return rec;
}

LimitEstimate hk_estimate(const LocalRingAtPoint& L, std::uint32_t e_max, const FinvOptions& opts) {
  require_e_max(e_max);
  std::vector<Rational> values;
  std::vector<std::uint64_t> raw;
  for (std::uint32_t e = 1; e <= e_max; ++e) {
    HKRecord r = hk_function(L, e, std::nullopt, opts);
    values.push_back(r.normalized);
    raw.push_back(r.lambda);
  }
  return extrapolate(std::move(values), std::move(raw), L.characteristic(), opts.tolerance);
}

Ideal frobenius_trace_ideal(const LocalRingAtPoint& L, std::uint32_t e, const FinvOptions& opts) {
  return Ideal(L.ring(), trace_generators(L, q_of(L, e), false, opts));
}

bool fedder_is_fpure(const LocalRingAtPoint& L, const FinvOptions& opts) {
  const std::uint64_t p = L.characteristic();
  auto gens = trace_generators(L, p, true, opts);
  return std::any_of(gens.begin(), gens.end(), [](const Polynomial& g) { return !g.is_zero(); });
}

Ideal splitting_ideal(const LocalRingAtPoint& L, std::uint32_t e, const FinvOptions& opts) {
  if (e < 1) throw Error(ErrorKind::InvalidArgument, "splitting ideals need e >= 1");
  const std::uint64_t q = q_of(L, e);
  return box_colon(L, q, trace_generators(L, q, true, opts), opts);
}

SplitRecord splitting_number(const LocalRingAtPoint& L, std::uint32_t e, const FinvOptions& opts) {
  if (e < 1) throw Error(ErrorKind::InvalidArgument, "splitting numbers need e >= 1");
  SplitRecord rec;
  rec.e = e;
  rec.q = q_of(L, e);
  rec.a_e = box_colon_length(L, rec.q, trace_generators(L, rec.q, true, opts), opts);
  rec.s_e = ratio(rec.a_e, normalizer(L, rec.q));
  return rec;
}

LimitEstimate fsig_estimate(const LocalRingAtPoint& L, std::uint32_t e_max, const FinvOptions& opts) {
  require_e_max(e_max);
  SplitRecord first = splitting_number(L, 1, opts);
  if (first.a_e == 0) {
    // not F-split, and s > 0 forces F-splitting
    return extrapolate({Rational(0)}, {0}, L.characteristic(), opts.tolerance);
  }
  std::vector<Rational> values{first.s_e};
  std::vector<std::uint64_t> raw{first.a_e};
  for (std::uint32_t e = 2; e <= e_max; ++e) {
    SplitRecord r = splitting_number(L, e, opts);
    values.push_back(r.s_e);
    raw.push_back(r.a_e);
  }
  return extrapolate(std::move(values), std::move(raw), L.characteristic(), opts.tolerance);
}

std::uint64_t pair_exponent(const Rational& t, std::uint64_t q) {
  if (t < Rational(0)) throw Error(ErrorKind::InvalidArgument, "pair exponent t must be non-negative");
  const std::int64_t num = t.numerator() * static_cast<std::int64_t>(q - 1);
  const std::int64_t den = t.denominator();
  return static_cast<std::uint64_t>((num + den - 1) / den);
}

namespace {

void require_nonzero_mod_I(const LocalRingAtPoint& L, const Ideal& a0, const FinvOptions& opts) {
  bool nonzero = std::any_of(a0.gens().begin(), a0.gens().end(),
                             [&](const Polynomial& g) { return !L.translated().contains(g, opts.budget); });
  if (!nonzero) throw Error(ErrorKind::ZeroIdeal, "the ideal a is zero modulo I");
}

}  // namespace

SplitRecord pair_splitting_number(const LocalRingAtPoint& L, const Ideal& a, const Rational& t, std::uint32_t e,
                                  const FinvOptions& opts) {
  if (e < 1) throw Error(ErrorKind::InvalidArgument, "splitting numbers need e >= 1");
  const std::uint64_t q = q_of(L, e);
  const std::uint64_t k = pair_exponent(t, q);
  Ideal a0 = L.localize(a);
  require_nonzero_mod_I(L, a0, opts);

  auto nf = [q](const Polynomial& f) { return truncate_box(f, q); };
  std::vector<Polynomial> a_pow = power_span(a0, k, nf);
  std::vector<Polynomial> J_gens = trace_generators(L, q, true, opts);
  std::vector<Polynomial> products = span_products(a_pow, J_gens, L.ring(), nf);

  SplitRecord rec;
  rec.e = e;
  rec.q = q;
  rec.a_e = box_colon_length(L, q, products, opts);
  rec.s_e = ratio(rec.a_e, normalizer(L, q));
  return rec;
}

std::uint64_t nu_invariant(const LocalRingAtPoint& L, const Ideal& a, std::uint32_t e, const FinvOptions& opts) {
  const std::uint64_t q = q_of(L, e);
  Ideal a0 = L.localize(a);
  require_nonzero_mod_I(L, a0, opts);
  std::vector<Fp> origin(L.nvars());
  for (const auto& g : a0.gens())
    if (g.evaluate(origin).value != 0)
      throw Error(ErrorKind::InvalidArgument, "a is not contained in the maximal ideal of the point");

  Ideal G = L.translated() + Ideal::frobenius_box(L.ring(), q);
  G.groebner_basis(opts.budget);
  auto nf = [&](const Polynomial& f) { return G.normal_form(f, opts.budget); };
  auto contained = [&](std::uint64_t r) { return power_span(a0, r, nf).empty(); };

  // a ⊆ m + I_0, so a^{n(q-1)+1} ⊆ m^{[q]} + I_0
  std::uint64_t lo = 0;
  std::uint64_t hi = L.nvars() * (q - 1) + 1;
  if (contained(0)) throw Error(ErrorKind::UnitIdeal, "m^{[q]} + I is the unit ideal");
  // invariant: a^lo not contained, a^hi contained
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (contained(mid))
      hi = mid;
    else
      lo = mid;
  }
  return lo;
}

DiagnosticFlags classify(const LocalRingAtPoint& L, std::uint32_t e_max, const FinvOptions& opts) {
  DiagnosticFlags out;
  out.dim = L.dim();
  const std::uint64_t p = L.characteristic();
  out.regular = hk_function(L, 1, std::nullopt, opts).lambda == checked_pow(p, static_cast<std::uint32_t>(L.dim()));
  out.f_pure = fedder_is_fpure(L, opts);
  out.hk = hk_estimate(L, e_max, opts);
  out.fsig = fsig_estimate(L, e_max, opts);
  try {
    out.hilbert_samuel =
        hilbert_samuel(L.translated(), L.maximal(), opts.hilbert_samuel_n_max, opts.budget).multiplicity;
  } catch (const Error& err) {
    if (err.kind() != ErrorKind::NotStabilized) throw;
  }

  const double ehk = to_double(out.hk.value);
  if (out.hilbert_samuel) {
    const double ehs = to_double(*out.hilbert_samuel);
    double factorial = 1;
    for (int i = 2; i <= L.dim(); ++i) factorial *= i;
    out.predicted_sfr_gorenstein = ehk <= 1.0 + std::max(1.0 / factorial, 1.0 / ehs) + 1e-12;
  }
  if (out.regular) {
    out.hl = HlStatus::Vacuous;
  } else if (out.hilbert_samuel) {
    out.hl_lhs = (to_double(*out.hilbert_samuel) - 1.0) * (1.0 - to_double(out.fsig.value));
    out.hl_rhs = ehk - 1.0;
    out.hl = out.hl_lhs >= out.hl_rhs - opts.hl_tolerance ? HlStatus::Satisfied : HlStatus::Violated;
  }
  return out;
}

}  // namespace charp
