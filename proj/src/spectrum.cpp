#include "charp/spectrum.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

namespace charp {

namespace {

std::string point_label(const RingPresentation& R, std::size_t comp, std::span<const Fp> point) {
  std::string s = R.component(comp).name + "@(";
  for (std::size_t i = 0; i < point.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(point[i].value);
  }
  return s + ")";
}

bool on_variety(const Ideal& I, std::span<const Fp> point) {
  for (const auto& g : I.gens())
    if (g.evaluate(point).value != 0) return false;
  return true;
}

// A declared-prime component is one whose declared minimal primes consist of
// I itself (or I = 0): its generic local ring is the fraction field.
bool declared_domain(const Component& c, const Budget& budget) {
  if (c.ideal.is_zero()) return true;
  if (!c.declared_min_primes || c.declared_min_primes->size() != 1) return false;
  return same_ideal(c.declared_min_primes->front(), c.ideal, budget);
}

LimitEstimate exact_one(std::uint32_t e_max) {
  LimitEstimate est;
  est.value = Rational(1);
  est.e_used = e_max;
  est.confidence = Confidence::Exact;
  return est;
}

void require_sample(const RingPresentation& R, const PrimeSample& s) {
  if (s.component >= R.size())
    throw Error(ErrorKind::InvalidArgument, "sample refers to component " + std::to_string(s.component) +
                                                " of " + std::to_string(R.size()));
}

LocalRingAtPoint sample_ring(const RingPresentation& R, const PrimeSample& s, const Budget& budget) {
  require_sample(R, s);
  return LocalRingAtPoint(R.component(s.component).ideal, s.point, budget);
}

using Estimator = LimitEstimate (*)(const LocalRingAtPoint&, std::uint32_t, const FinvOptions&);

std::vector<SampleValue> evaluate_samples(const RingPresentation& R, const std::vector<PrimeSample>& samples,
                                          const GammaData& gamma, std::uint32_t e_max, const FinvOptions& opts,
                                          kernels::Exec exec, Estimator estimator, bool only_z) {
  std::vector<SampleValue> out(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    require_sample(R, samples[i]);
    out[i].sample = samples[i];
    out[i].in_z = std::find(gamma.z_components.begin(), gamma.z_components.end(), samples[i].component) !=
                  gamma.z_components.end();
  }
  kernels::parallel_for(
      samples.size(),
      [&](std::size_t i) {
        SampleValue& v = out[i];
        const Component& c = R.component(v.sample.component);
        if (v.sample.whole_component) {
          if (!declared_domain(c, opts.budget))
            throw Error(ErrorKind::InvalidArgument,
                        "whole-component sample on '" + c.name + "' needs the component declared prime");
          v.jacobian_regular = true;
          if (!only_z || v.in_z) v.estimate = exact_one(e_max);
          return;
        }
        LocalRingAtPoint L = sample_ring(R, v.sample, opts.budget);
        v.jacobian_regular = jacobian_regular(c.ideal, gamma.dims[v.sample.component], v.sample.point);
        if (only_z && !v.in_z) return;
        v.estimate = estimator(L, e_max, opts);
      },
      exec);
  return out;
}

}  // namespace

RingPresentation::RingPresentation(std::vector<Component> components, const Budget& budget)
    : components_(std::move(components)) {
  if (components_.empty()) throw Error(ErrorKind::InvalidArgument, "a ring presentation needs a component");
  const auto p = components_.front().ideal.ring()->field().characteristic();
  for (const auto& c : components_) {
    if (c.ideal.ring()->field().characteristic() != p)
      throw Error(ErrorKind::InvalidArgument, "component '" + c.name + "' has a different characteristic");
    if (c.ideal.is_unit(budget))
      throw Error(ErrorKind::UnitIdeal, "component '" + c.name + "' is the zero ring");
    if (!c.declared_min_primes) continue;
    for (const auto& Q : *c.declared_min_primes) {
      if (Q.ring()->nvars() != c.ideal.ring()->nvars() || Q.ring()->field() != c.ideal.ring()->field())
        throw Error(ErrorKind::InvalidArgument, "declared prime of '" + c.name + "' lives in another ring");
      if (Q.is_unit(budget))
        throw Error(ErrorKind::UnitIdeal, "declared prime of '" + c.name + "' is the unit ideal");
      if (!Q.contains(c.ideal, budget))
        throw Error(ErrorKind::InvalidArgument, "declared prime of '" + c.name + "' does not contain its ideal");
    }
  }
}

GammaData gamma_data(const RingPresentation& R, const Budget& budget) {
  GammaData g;
  for (const auto& c : R.components()) {
    const int d = krull_dim(c.ideal, budget);
    g.dims.push_back(d);
    g.alpha_at_closed_point.push_back(0);
    g.gamma_per_component.push_back(d);
    bool equi = true;
    if (c.declared_min_primes)
      for (const auto& Q : *c.declared_min_primes)
        if (krull_dim(Q, budget) != d) equi = false;
    g.equidimensional.push_back(equi);
  }
  g.gamma = *std::max_element(g.gamma_per_component.begin(), g.gamma_per_component.end());
  for (std::size_t i = 0; i < R.size(); ++i)
    if (g.gamma_per_component[i] == g.gamma) g.z_components.push_back(i);
  // A lower-dimensional minimal prime inside a component falls outside Z_R.
  g.z_is_spec = g.z_components.size() == R.size() &&
                std::all_of(g.equidimensional.begin(), g.equidimensional.end(), [](bool b) { return b; });
  return g;
}

bool jacobian_regular(const Ideal& I, int dim, std::span<const Fp> point) {
  const auto& ring = I.ring();
  const auto& F = ring->field();
  const std::size_t n = ring->nvars();
  std::vector<std::vector<Fp>> rows;
  for (const auto& g : I.gens()) {
    if (g.is_zero()) continue;
    std::vector<Fp> row(n);
    for (std::size_t j = 0; j < n; ++j) row[j] = g.derivative(j).evaluate(point);
    rows.push_back(std::move(row));
  }
  std::size_t rank = 0;
  for (std::size_t col = 0; col < n && rank < rows.size(); ++col) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][col].value == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[rank], rows[piv]);
    const Fp inv = F.inv(rows[rank][col]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][col].value == 0) continue;
      const Fp f = F.mul(rows[r][col], inv);
      for (std::size_t j = col; j < n; ++j) rows[r][j] = F.sub(rows[r][j], F.mul(f, rows[rank][j]));
    }
    ++rank;
  }
  return static_cast<int>(rank) == static_cast<int>(n) - dim;
}

std::vector<PrimeSample> random_smooth_points(const RingPresentation& R, std::size_t component, std::size_t count,
                                              std::uint64_t seed, std::span<const std::vector<Fp>> exclude) {
  if (component >= R.size()) throw Error(ErrorKind::InvalidArgument, "no such component");
  const Ideal& I = R.component(component).ideal;
  const std::size_t n = I.ring()->nvars();
  const std::uint32_t p = R.characteristic();
  const int d = krull_dim(I);
  std::mt19937_64 rng(seed);

  auto excluded = [&](const std::vector<Fp>& pt) {
    return std::any_of(exclude.begin(), exclude.end(), [&](const std::vector<Fp>& x) {
      return x.size() == pt.size() && std::equal(x.begin(), x.end(), pt.begin(),
                                                 [](Fp a, Fp b) { return a.value == b.value; });
    });
  };
  auto usable = [&](const std::vector<Fp>& pt) {
    return on_variety(I, pt) && !excluded(pt) && jacobian_regular(I, d, pt);
  };

  std::vector<std::vector<Fp>> found;
  std::uint64_t total = 1;
  bool exhaustive = true;
  for (std::size_t i = 0; i < n && exhaustive; ++i) {
    total *= p;
    if (total > 1'000'000) exhaustive = false;
  }
  if (exhaustive) {
    std::vector<Fp> pt(n);
    for (std::uint64_t code = 0; code < total; ++code) {
      std::uint64_t c = code;
      for (std::size_t i = 0; i < n; ++i) {
        pt[i] = Fp{static_cast<std::uint32_t>(c % p)};
        c /= p;
      }
      if (usable(pt)) found.push_back(pt);
    }
    std::shuffle(found.begin(), found.end(), rng);
    if (found.size() > count) found.resize(count);
  } else {
    std::uniform_int_distribution<std::uint32_t> coord(0, p - 1);
    for (std::uint64_t trial = 0; trial < 1'000'000 && found.size() < count; ++trial) {
      std::vector<Fp> pt(n);
      for (auto& c : pt) c = Fp{coord(rng)};
      if (usable(pt) && std::find(found.begin(), found.end(), pt) == found.end()) found.push_back(pt);
    }
  }
  std::vector<PrimeSample> out;
  for (auto& pt : found) {
    PrimeSample s;
    s.component = component;
    s.label = point_label(R, component, pt);
    s.point = std::move(pt);
    out.push_back(std::move(s));
  }
  return out;
}

std::string_view bound_name(BoundDirection b) {
  switch (b) {
    case BoundDirection::LowerBound: return "lower bound";
    case BoundDirection::UpperBound: return "upper bound";
    case BoundDirection::Exact: return "exact";
  }
  return "?";
}

namespace {

// A zero-dimensional component declared prime is a field, so its whole-
// component sample is its only prime. When every component in `comps` is of
// that kind and sampled, the extremum is over all of the relevant primes.
bool sampling_complete(const GammaData& g, const std::vector<std::size_t>& comps,
                       const std::vector<PrimeSample>& samples) {
  return std::all_of(comps.begin(), comps.end(), [&](std::size_t c) {
    return g.dims[c] == 0 && std::any_of(samples.begin(), samples.end(), [&](const PrimeSample& s) {
             return s.component == c && s.whole_component;
           });
  });
}

}  // namespace

GlobalEstimate global_hk(const RingPresentation& R, const std::vector<PrimeSample>& samples, std::uint32_t e_max,
                         const FinvOptions& opts, kernels::Exec exec) {
  GlobalEstimate out;
  out.gamma = gamma_data(R, opts.budget);
  out.per_sample = evaluate_samples(R, samples, out.gamma, e_max, opts, exec, &hk_estimate, true);
  for (std::size_t i = 0; i < out.per_sample.size(); ++i) {
    const auto& v = out.per_sample[i];
    if (!v.estimate) continue;
    if (!out.extremal_sample || v.estimate->value > out.value.value) {
      out.extremal_sample = i;
      out.value = *v.estimate;
    }
  }
  if (!out.extremal_sample) throw Error(ErrorKind::InvalidArgument, "no sample lies on Z_R");
  out.bound = sampling_complete(out.gamma, out.gamma.z_components, samples) ? BoundDirection::Exact
                                                                              : BoundDirection::LowerBound;
  return out;
}

GlobalEstimate global_fsig(const RingPresentation& R, const std::vector<PrimeSample>& samples, std::uint32_t e_max,
                           const FinvOptions& opts, kernels::Exec exec) {
  GlobalEstimate out;
  out.gamma = gamma_data(R, opts.budget);
  if (!out.gamma.z_is_spec) {
    out.value = exact_one(e_max);
    out.value.value = Rational(0);
    out.bound = BoundDirection::Exact;
    out.z_rule_applied = true;
    for (const auto& s : samples) {
      require_sample(R, s);
      SampleValue v;
      v.sample = s;
      v.in_z = std::find(out.gamma.z_components.begin(), out.gamma.z_components.end(), s.component) !=
               out.gamma.z_components.end();
      v.jacobian_regular =
          s.whole_component || jacobian_regular(R.component(s.component).ideal, out.gamma.dims[s.component], s.point);
      out.per_sample.push_back(std::move(v));
    }
    return out;
  }
  out.per_sample = evaluate_samples(R, samples, out.gamma, e_max, opts, exec, &fsig_estimate, false);
  for (std::size_t i = 0; i < out.per_sample.size(); ++i) {
    const auto& v = out.per_sample[i];
    if (!out.extremal_sample || v.estimate->value < out.value.value) {
      out.extremal_sample = i;
      out.value = *v.estimate;
    }
  }
  if (!out.extremal_sample) throw Error(ErrorKind::InvalidArgument, "global F-signature needs a sample");
  std::vector<std::size_t> all(R.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  out.bound = sampling_complete(out.gamma, all, samples) ? BoundDirection::Exact : BoundDirection::UpperBound;
  return out;
}

SemicontinuityReport semicontinuity_probe(const RingPresentation& R, const PrimeSample& special,
                                          const std::vector<PrimeSample>& nearby, std::uint32_t e,
                                          const FinvOptions& opts, kernels::Exec exec) {
  require_sample(R, special);
  for (const auto& s : nearby)
    if (s.component != special.component)
      throw Error(ErrorKind::InvalidArgument, "semicontinuity samples must share one component");
  if (special.whole_component) throw Error(ErrorKind::InvalidArgument, "semicontinuity needs closed points");
  const Component& c = R.component(special.component);
  const Budget& budget = opts.budget;
  const int d = krull_dim(c.ideal, budget);
  if (c.declared_min_primes)
    for (const auto& Q : *c.declared_min_primes)
      if (krull_dim(Q, budget) != d)
        throw Error(ErrorKind::NotEquidimensional, "component '" + c.name + "' has minimal primes of different dimension");

  std::vector<PrimeSample> all{special};
  all.insert(all.end(), nearby.begin(), nearby.end());
  std::vector<SemicontinuityRow> rows(all.size());
  kernels::parallel_for(
      all.size(),
      [&](std::size_t i) {
        if (all[i].whole_component) throw Error(ErrorKind::InvalidArgument, "semicontinuity needs closed points");
        LocalRingAtPoint L = sample_ring(R, all[i], budget);
        rows[i] = {all[i], hk_function(L, e, std::nullopt, opts)};
      },
      exec);

  SemicontinuityReport rep;
  rep.e = e;
  rep.special = rows.front();
  rep.nearby.assign(rows.begin() + 1, rows.end());
  for (std::size_t i = 0; i < rep.nearby.size(); ++i)
    if (rep.nearby[i].record.normalized > rep.special.record.normalized) rep.violations.push_back(i);
  return rep;
}

bool FlatExtensionReport::all_equal() const noexcept {
  return std::all_of(rows.begin(), rows.end(),
                     [](const FlatRow& r) { return r.hk_equal && r.fsig_equal && r.pair_equal; });
}

bool FlatExtensionReport::all_monotone() const noexcept {
  return std::all_of(rows.begin(), rows.end(), [](const FlatRow& r) { return r.monotone; });
}

LocalRingAtPoint extend_by_variables(const LocalRingAtPoint& L, int extra_vars, const Budget& budget) {
  if (extra_vars < 1) throw Error(ErrorKind::InvalidArgument, "a flat extension needs at least one new variable");
  const auto& base = *L.ring();
  if (base.nvars() + static_cast<std::size_t>(extra_vars) > kMaxVars)
    throw Error(ErrorKind::TooManyVariables, "extension exceeds " + std::to_string(kMaxVars) + " variables");
  std::vector<std::string> vars = base.vars();
  for (int k = 1; k <= extra_vars; ++k) {
    std::string name = "t" + std::to_string(k);
    while (std::find(vars.begin(), vars.end(), name) != vars.end()) name = "_" + name;
    vars.push_back(std::move(name));
  }
  RingPtr T = make_ring(base.field(), std::move(vars), base.order());
  std::vector<std::size_t> map(base.nvars());
  for (std::size_t i = 0; i < map.size(); ++i) map[i] = i;
  std::vector<Polynomial> gens;
  for (const auto& g : L.translated().gens()) gens.push_back(g.map_to(T, map));
  return LocalRingAtPoint::at_origin(Ideal(T, std::move(gens)), budget);
}

FlatExtensionReport flat_extension_check(const LocalRingAtPoint& L, int extra_vars, std::uint32_t e_max,
                                         const FinvOptions& opts, const std::optional<PairSpec>& pair) {
  LocalRingAtPoint T = extend_by_variables(L, extra_vars, opts.budget);
  std::optional<Ideal> a_T;
  if (pair) {
    std::vector<std::size_t> map(L.nvars());
    for (std::size_t i = 0; i < map.size(); ++i) map[i] = i;
    std::vector<Polynomial> gens;
    const Ideal a0 = L.localize(pair->a);
    for (const auto& g : a0.gens()) gens.push_back(g.map_to(T.ring(), map));
    a_T = Ideal(T.ring(), std::move(gens));
  }

  FlatExtensionReport rep;
  rep.extra_vars = extra_vars;
  for (std::uint32_t e = 1; e <= e_max; ++e) {
    FlatRow row;
    row.e = e;
    row.hk_base = hk_function(L, e, std::nullopt, opts);
    row.hk_ext = hk_function(T, e, std::nullopt, opts);
    row.q = row.hk_base.q;
    row.split_base = splitting_number(L, e, opts);
    row.split_ext = splitting_number(T, e, opts);
    const std::uint64_t scale = checked_pow(row.q, static_cast<std::uint32_t>(extra_vars));
    row.hk_equal = row.hk_ext.lambda == scale * row.hk_base.lambda && row.hk_ext.normalized == row.hk_base.normalized;
    row.fsig_equal = row.split_ext.a_e == scale * row.split_base.a_e && row.split_ext.s_e == row.split_base.s_e;
    row.monotone = row.hk_ext.normalized >= row.hk_base.normalized && row.split_ext.s_e <= row.split_base.s_e;
    if (pair) {
      // a is already translated for T, so it is passed in T's own coordinates
      row.pair_base = pair_splitting_number(L, pair->a, pair->t, e, opts);
      row.pair_ext = pair_splitting_number(T, *a_T, pair->t, e, opts);
      row.pair_equal = row.pair_ext->a_e == scale * row.pair_base->a_e && row.pair_ext->s_e == row.pair_base->s_e;
      row.monotone = row.monotone && row.pair_ext->s_e <= row.pair_base->s_e;
    }
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace charp
