#include "charp/report.hpp"

#include <algorithm>
#include <sstream>

namespace charp {

namespace {

std::string opt_int(const std::optional<std::uint64_t>& v) { return v ? std::to_string(*v) : ""; }
std::string opt_rat(const std::optional<Rational>& v) { return v ? format_rational(*v) : ""; }

}  // namespace

bool Report::all_ok() const noexcept {
  return std::all_of(tasks.begin(), tasks.end(), [](const TaskResult& t) { return t.ok; });
}

std::string format_decimal(const Rational& r, int places) {
  __int128 num = r.numerator();
  const __int128 den = r.denominator();
  const bool neg = num < 0;
  if (neg) num = -num;
  __int128 scale = 1;
  for (int i = 0; i < places; ++i) scale *= 10;
  // round half up on the scaled magnitude
  const __int128 scaled = (num * scale * 2 + den) / (den * 2);
  const __int128 whole = scaled / scale;
  __int128 frac = scaled % scale;
  std::string digits(static_cast<std::size_t>(places), '0');
  for (int i = places - 1; i >= 0; --i) {
    digits[static_cast<std::size_t>(i)] = static_cast<char>('0' + static_cast<int>(frac % 10));
    frac /= 10;
  }
  std::string w;
  __int128 x = whole;
  do {
    w.insert(w.begin(), static_cast<char>('0' + static_cast<int>(x % 10)));
    x /= 10;
  } while (x != 0);
  std::string out = (neg && scaled != 0 ? "-" : "") + w;
  if (places > 0) out += "." + digits;
  return out;
}

std::string format_rational(const Rational& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator()) + " (" + format_decimal(r) + ")";
}

nlohmann::json to_json(const Rational& r) {
  return {{"exact", std::to_string(r.numerator()) + "/" + std::to_string(r.denominator())},
          {"decimal", format_decimal(r)}};
}

nlohmann::json to_json(const LimitEstimate& est) {
  nlohmann::json values = nlohmann::json::array();
  for (const auto& v : est.values) values.push_back(to_json(v));
  nlohmann::json diffs = nlohmann::json::array();
  for (const auto& d : est.successive_diffs) diffs.push_back(to_json(d));
  return {{"value", to_json(est.value)},
          {"confidence", confidence_name(est.confidence)},
          {"e_used", est.e_used},
          {"raw", est.raw},
          {"values", values},
          {"successive_diffs", diffs}};
}

std::string render_tsv(const Report& report) {
  std::ostringstream out;
  out << "task\tcomponent\tpoint\te\tq\tlambda\tnorm\ta_e\ts_e\n";
  for (const auto& t : report.tasks) {
    if (!t.ok) {
      out << t.name << "\tERROR\t" << t.error << "\t\t\t\t\t\t\n";
      continue;
    }
    for (const auto& r : t.rows)
      out << t.name << '\t' << r.component << '\t' << r.point << '\t' << r.e << '\t' << r.q << '\t'
          << opt_int(r.lambda) << '\t' << opt_rat(r.norm) << '\t' << opt_int(r.a_e) << '\t' << opt_rat(r.s_e)
          << '\n';
  }
  return out.str();
}

nlohmann::json render_json(const Report& report) {
  nlohmann::json tasks = nlohmann::json::array();
  for (const auto& t : report.tasks) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : t.rows) {
      nlohmann::json row = {{"component", r.component}, {"point", r.point}, {"e", r.e}, {"q", r.q}};
      if (r.lambda) row["lambda"] = *r.lambda;
      if (r.norm) row["norm"] = to_json(*r.norm);
      if (r.a_e) row["a_e"] = *r.a_e;
      if (r.s_e) row["s_e"] = to_json(*r.s_e);
      rows.push_back(std::move(row));
    }
    nlohmann::json task = {{"name", t.name},
                           {"kind", task_kind_name(t.kind)},
                           {"ok", t.ok},
                           {"rows", rows},
                           {"details", t.details},
                           {"wall_seconds", t.seconds},
                           {"budget_usage",
                            {{"max_basis", t.max_basis}, {"pairs", t.pairs}, {"max_monomials", t.max_monomials}}}};
    if (!t.ok) task["error"] = {{"kind", t.error}, {"message", t.message}};
    tasks.push_back(std::move(task));
  }
  return {{"job", report.job}, {"p", report.p}, {"ok", report.all_ok()}, {"tasks", tasks}};
}

}  // namespace charp
