#include <algorithm>
#include <chrono>

#include "charp/report.hpp"

namespace charp {

namespace {

struct Context {
  const CompiledJob& job;
  const JobTask& task;
  FinvOptions opts;
  TaskResult& out;

  const RingPresentation& ring() const {
    if (!job.ring) throw Error(ErrorKind::InvalidArgument, "the job declares no components");
    return *job.ring;
  }
  const PrimeSample& point(const std::string& name) const { return job.points.at(name); }
  std::string component_name(std::size_t i) const { return ring().component(i).name; }
  LocalRingAtPoint local(const PrimeSample& s) const {
    return LocalRingAtPoint(ring().component(s.component).ideal, s.point, opts.budget);
  }
  std::optional<Ideal> ideal() const {
    if (!task.ideal) return std::nullopt;
    return job.ideals.at(*task.ideal);
  }
  std::uint32_t e_max() const { return task.e_max.value_or(2); }
};

TableRow make_row(std::string comp, std::string point, std::uint32_t e, std::uint64_t q) {
  TableRow r;
  r.component = std::move(comp);
  r.point = std::move(point);
  r.e = e;
  r.q = q;
  return r;
}

void hk_rows(Context& c, const std::string& comp, const std::string& label, const LimitEstimate& est) {
  std::uint64_t q = 1;
  for (std::size_t i = 0; i < est.raw.size(); ++i) {
    q *= c.job.source.p;
    TableRow r = make_row(comp, label, static_cast<std::uint32_t>(i + 1), q);
    r.lambda = est.raw[i];
    r.norm = est.values[i];
    c.out.rows.push_back(std::move(r));
  }
}

void split_rows(Context& c, const std::string& comp, const std::string& label, const LimitEstimate& est) {
  std::uint64_t q = 1;
  for (std::size_t i = 0; i < est.raw.size(); ++i) {
    q *= c.job.source.p;
    TableRow r = make_row(comp, label, static_cast<std::uint32_t>(i + 1), q);
    r.a_e = est.raw[i];
    r.s_e = est.values[i];
    c.out.rows.push_back(std::move(r));
  }
}

void run_hk(Context& c) {
  const auto J = c.ideal();
  for (const auto& name : c.task.points) {
    const auto& s = c.point(name);
    LocalRingAtPoint L = c.local(s);
    std::vector<Rational> values;
    std::vector<std::uint64_t> raw;
    for (std::uint32_t e = 1; e <= c.e_max(); ++e) {
      HKRecord rec = hk_function(L, e, J, c.opts);
      values.push_back(rec.normalized);
      raw.push_back(rec.lambda);
    }
    LimitEstimate est = extrapolate(values, raw, L.characteristic(), c.opts.tolerance);
    hk_rows(c, c.component_name(s.component), name, est);
    nlohmann::json d = {{"dim", L.dim()}};
    if (c.e_max() >= 2) d["estimate"] = to_json(est);
    c.out.details[name] = d;
  }
}

void run_fsig(Context& c) {
  for (const auto& name : c.task.points) {
    const auto& s = c.point(name);
    LocalRingAtPoint L = c.local(s);
    nlohmann::json d = {{"dim", L.dim()}};
    if (c.e_max() >= 2) {
      LimitEstimate est = fsig_estimate(L, c.e_max(), c.opts);
      split_rows(c, c.component_name(s.component), name, est);
      d["estimate"] = to_json(est);
      if (est.raw.size() < c.e_max()) d["note"] = "a_1 = 0: not F-split, so a_e = 0 for every e";
    } else {
      SplitRecord r = splitting_number(L, 1, c.opts);
      TableRow row = make_row(c.component_name(s.component), name, 1, r.q);
      row.a_e = r.a_e;
      row.s_e = r.s_e;
      c.out.rows.push_back(std::move(row));
    }
    c.out.details[name] = d;
  }
}

void run_fedder(Context& c) {
  for (const auto& name : c.task.points) {
    const auto& s = c.point(name);
    LocalRingAtPoint L = c.local(s);
    const bool fpure = fedder_is_fpure(L, c.opts);
    SplitRecord r = splitting_number(L, 1, c.opts);
    TableRow row = make_row(c.component_name(s.component), name, 1, r.q);
    row.a_e = r.a_e;
    row.s_e = r.s_e;
    c.out.rows.push_back(std::move(row));
    c.out.details[name] = {{"f_pure", fpure}, {"a_1", r.a_e}};
  }
}

std::string t_label(const Rational& t) {
  return std::to_string(t.numerator()) + (t.denominator() == 1 ? "" : "/" + std::to_string(t.denominator()));
}

void run_pair(Context& c) {
  const Ideal a = *c.ideal();
  for (const auto& name : c.task.points) {
    const auto& s = c.point(name);
    LocalRingAtPoint L = c.local(s);
    nlohmann::json per_t = nlohmann::json::object();
    for (const auto& t : c.task.t) {
      nlohmann::json list = nlohmann::json::array();
      for (std::uint32_t e = 1; e <= c.e_max(); ++e) {
        SplitRecord r = pair_splitting_number(L, a, t, e, c.opts);
        TableRow row = make_row(c.component_name(s.component), name + "|t=" + t_label(t), e, r.q);
        row.a_e = r.a_e;
        row.s_e = r.s_e;
        c.out.rows.push_back(std::move(row));
        list.push_back({{"e", e}, {"exponent", pair_exponent(t, r.q)}, {"a_e", r.a_e}, {"s_e", to_json(r.s_e)}});
      }
      per_t[t_label(t)] = list;
    }
    c.out.details[name] = per_t;
  }
}

void run_nu(Context& c) {
  const Ideal a = *c.ideal();
  for (const auto& name : c.task.points) {
    LocalRingAtPoint L = c.local(c.point(name));
    nlohmann::json list = nlohmann::json::array();
    std::uint64_t q = 1;
    for (std::uint32_t e = 1; e <= c.e_max(); ++e) {
      q *= c.job.source.p;
      const std::uint64_t nu = nu_invariant(L, a, e, c.opts);
      list.push_back({{"e", e}, {"q", q}, {"nu", nu}, {"nu_over_q", to_json(Rational(static_cast<std::int64_t>(nu),
                                                                                     static_cast<std::int64_t>(q)))}});
    }
    c.out.details[name] = list;
  }
}

std::vector<PrimeSample> gather_samples(Context& c, const std::vector<std::string>& names,
                                        std::optional<std::size_t> random_component,
                                        std::span<const std::vector<Fp>> exclude) {
  std::vector<PrimeSample> samples;
  for (const auto& n : names) samples.push_back(c.point(n));
  const std::size_t count = c.task.random_points.value_or(0);
  if (count > 0) {
    const std::size_t comp = random_component.value_or(0);
    auto extra = random_smooth_points(c.ring(), comp, count, c.task.seed.value_or(1), exclude);
    if (extra.size() < count)
      c.out.details["random_points_note"] = "only " + std::to_string(extra.size()) + " smooth rational points found";
    samples.insert(samples.end(), extra.begin(), extra.end());
  }
  return samples;
}

nlohmann::json gamma_json(const GammaData& g) {
  return {{"dims", g.dims},
          {"alpha_at_closed_point", g.alpha_at_closed_point},
          {"gamma_per_component", g.gamma_per_component},
          {"equidimensional", g.equidimensional},
          {"gamma", g.gamma},
          {"z_components", g.z_components},
          {"z_is_spec", g.z_is_spec}};
}

void run_global(Context& c, bool hk) {
  std::optional<std::size_t> rc;
  if (c.task.random_component) rc = c.job.component_index.at(*c.task.random_component);
  std::vector<std::vector<Fp>> exclude;
  for (const auto& n : c.task.points) exclude.push_back(c.point(n).point);
  auto samples = gather_samples(c, c.task.points, rc, exclude);
  GlobalEstimate g = hk ? global_hk(c.ring(), samples, c.e_max(), c.opts) : global_fsig(c.ring(), samples, c.e_max(), c.opts);
  nlohmann::json per = nlohmann::json::array();
  for (const auto& v : g.per_sample) {
    nlohmann::json s = {{"sample", v.sample.label},
                        {"component", c.component_name(v.sample.component)},
                        {"in_z", v.in_z},
                        {"whole_component", v.sample.whole_component},
                        {"jacobian_regular", v.jacobian_regular}};
    if (v.estimate) {
      s["estimate"] = to_json(*v.estimate);
      if (!v.sample.whole_component) {
        if (hk) hk_rows(c, c.component_name(v.sample.component), v.sample.label, *v.estimate);
        else split_rows(c, c.component_name(v.sample.component), v.sample.label, *v.estimate);
      }
    } else if (hk && !v.in_z) {
      s["note"] = "off Z_R, excluded from the max";
    }
    per.push_back(std::move(s));
  }
  c.out.details["value"] = to_json(g.value);
  c.out.details["bound"] = bound_name(g.bound);
  c.out.details["z_rule_applied"] = g.z_rule_applied;
  if (g.extremal_sample) c.out.details[hk ? "argmax" : "argmin"] = g.per_sample[*g.extremal_sample].sample.label;
  c.out.details["gamma"] = gamma_json(g.gamma);
  c.out.details["samples"] = per;
  c.out.details["declared_primes_trusted"] = true;
}

void run_semicontinuity(Context& c) {
  const PrimeSample& special = c.point(*c.task.special);
  std::vector<std::vector<Fp>> exclude{special.point};
  for (const auto& n : c.task.nearby) exclude.push_back(c.point(n).point);
  auto nearby = gather_samples(c, c.task.nearby, special.component, exclude);
  const std::uint32_t e = c.task.e.value_or(1);
  SemicontinuityReport rep = semicontinuity_probe(c.ring(), special, nearby, e, c.opts);
  auto add = [&](const SemicontinuityRow& r) {
    TableRow row = make_row(c.component_name(r.sample.component), r.sample.label, e, r.record.q);
    row.lambda = r.record.lambda;
    row.norm = r.record.normalized;
    c.out.rows.push_back(std::move(row));
  };
  add(rep.special);
  for (const auto& r : rep.nearby) add(r);
  nlohmann::json viol = nlohmann::json::array();
  for (auto i : rep.violations) viol.push_back(rep.nearby[i].sample.label);
  c.out.details = {{"e", e}, {"holds", rep.holds()}, {"violations", viol}};
  if (!rep.holds()) {
    c.out.ok = false;
    c.out.error = "CheckFailed";
    c.out.message = "upper semicontinuity violated at " + viol.dump();
  }
}

void run_flat(Context& c) {
  std::optional<PairSpec> pair;
  if (c.task.ideal) pair = PairSpec{*c.ideal(), c.task.t.front()};
  const int k = c.task.extra_vars.value_or(1);
  bool ok = true;
  for (const auto& name : c.task.points) {
    const auto& s = c.point(name);
    LocalRingAtPoint L = c.local(s);
    FlatExtensionReport rep = flat_extension_check(L, k, c.e_max(), c.opts, pair);
    const std::string comp = c.component_name(s.component);
    const std::string ext = name + "[+" + std::to_string(k) + "]";
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : rep.rows) {
      TableRow base{comp, name, r.e, r.q, r.hk_base.lambda, r.hk_base.normalized, r.split_base.a_e, r.split_base.s_e};
      TableRow up{comp, ext, r.e, r.q, r.hk_ext.lambda, r.hk_ext.normalized, r.split_ext.a_e, r.split_ext.s_e};
      c.out.rows.push_back(std::move(base));
      c.out.rows.push_back(std::move(up));
      nlohmann::json j = {{"e", r.e}, {"hk_equal", r.hk_equal}, {"fsig_equal", r.fsig_equal}, {"monotone", r.monotone}};
      if (r.pair_base) {
        j["pair_base_a_e"] = r.pair_base->a_e;
        j["pair_ext_a_e"] = r.pair_ext->a_e;
        j["pair_equal"] = r.pair_equal;
      }
      rows.push_back(std::move(j));
    }
    c.out.details[name] = {{"extra_vars", k}, {"all_equal", rep.all_equal()}, {"all_monotone", rep.all_monotone()},
                           {"rows", rows}};
    ok = ok && rep.all_equal() && rep.all_monotone();
  }
  if (!ok) {
    c.out.ok = false;
    c.out.error = "CheckFailed";
    c.out.message = "flat extension equality or monotonicity failed";
  }
}

void run_classify(Context& c) {
  for (const auto& name : c.task.points) {
    const auto& s = c.point(name);
    LocalRingAtPoint L = c.local(s);
    DiagnosticFlags f = classify(L, c.e_max(), c.opts);
    const std::string comp = c.component_name(s.component);
    hk_rows(c, comp, name, f.hk);
    split_rows(c, comp, name, f.fsig);
    nlohmann::json d = {{"dim", f.dim},
                        {"regular", f.regular},
                        {"f_pure", f.f_pure},
                        {"hk", to_json(f.hk)},
                        {"fsig", to_json(f.fsig)},
                        {"hl", hl_status_name(f.hl)},
                        {"hl_lhs", f.hl_lhs},
                        {"hl_rhs", f.hl_rhs}};
    if (f.hilbert_samuel) d["hilbert_samuel_multiplicity"] = to_json(*f.hilbert_samuel);
    if (f.predicted_sfr_gorenstein) d["predicted_sfr_gorenstein"] = *f.predicted_sfr_gorenstein;
    d["note"] = "regular and f_pure are exact tests; every other flag comes from limit estimates";
    c.out.details[name] = d;
  }
}

void run_task(Context& c) {
  switch (c.task.kind) {
    case TaskKind::Hk: return run_hk(c);
    case TaskKind::Fsig: return run_fsig(c);
    case TaskKind::Fedder: return run_fedder(c);
    case TaskKind::Pair: return run_pair(c);
    case TaskKind::Nu: return run_nu(c);
    case TaskKind::GlobalHk: return run_global(c, true);
    case TaskKind::GlobalFsig: return run_global(c, false);
    case TaskKind::Semicontinuity: return run_semicontinuity(c);
    case TaskKind::FlatCheck: return run_flat(c);
    case TaskKind::Classify: return run_classify(c);
  }
}

}  // namespace

Report run_job(const CompiledJob& job, const std::string& job_name, const RunOptions& opts) {
  if (opts.jobs > 0) kernels::set_num_threads(opts.jobs);
  Report report;
  report.job = job_name;
  report.p = job.source.p;
  report.tasks.resize(job.source.tasks.size());

  kernels::parallel_for(report.tasks.size(), [&](std::size_t i) {
    const JobTask& task = job.source.tasks[i];
    TaskResult& out = report.tasks[i];
    out.name = task.name;
    out.kind = task.kind;
    FinvOptions fo;
    if (auto tol = task.tolerance ? task.tolerance : opts.tolerance) fo.tolerance = *tol;
    if (auto cap = task.budget_monomials ? task.budget_monomials : opts.budget_monomials) fo.budget.max_monomials = *cap;
    if (opts.monomial_cap) fo.budget.max_monomials = std::min(fo.budget.max_monomials, *opts.monomial_cap);
    Context c{job, task, fo, out};
    const auto start = std::chrono::steady_clock::now();
    try {
      run_task(c);
    } catch (const Error& err) {
      out.ok = false;
      out.error = std::string(error_kind_name(err.kind()));
      out.message = err.what();
      out.rows.clear();
    } catch (const std::exception& err) {
      out.ok = false;
      out.error = "InternalError";
      out.message = err.what();
      out.rows.clear();
    }
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.max_basis = fo.budget.usage->max_basis.load();
    out.pairs = fo.budget.usage->pairs.load();
    out.max_monomials = fo.budget.usage->max_monomials.load();
  });
  return report;
}

}  // namespace charp
