#include "charp/job.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace charp {

namespace {

constexpr std::string_view kTaskNames[] = {"hk",         "fsig",        "fedder",         "pair",       "nu",
                                           "global_hk",  "global_fsig", "semicontinuity", "flat_check", "classify"};

[[noreturn]] void fail(int line, const std::string& msg) {
  throw Error(ErrorKind::ParseError, line > 0 ? "line " + std::to_string(line) + ": " + msg : msg);
}

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

bool is_name(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
  });
}

std::vector<std::string> split_list(std::string_view value, int line, bool allow_empty = true) {
  std::vector<std::string> out;
  value = trim(value);
  if (value.empty()) {
    if (!allow_empty) fail(line, "empty list");
    return out;
  }
  std::size_t start = 0;
  while (true) {
    const auto comma = value.find(',', start);
    auto item = trim(value.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (item.empty()) fail(line, "empty list item");
    out.emplace_back(item);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

template <typename Int>
Int parse_int(std::string_view s, int line, std::string_view what) {
  s = trim(s);
  Int v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    fail(line, "'" + std::string(s) + "' is not a valid " + std::string(what));
  return v;
}

double parse_double(std::string_view s, int line, std::string_view what) {
  s = trim(s);
  try {
    std::size_t used = 0;
    const double v = std::stod(std::string(s), &used);
    if (used != s.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    fail(line, "'" + std::string(s) + "' is not a valid " + std::string(what));
  }
}

bool parse_bool(std::string_view s, int line) {
  s = trim(s);
  if (s == "true") return true;
  if (s == "false") return false;
  fail(line, "expected true or false, got '" + std::string(s) + "'");
}

Rational parse_rational_at(std::string_view s, int line) {
  try {
    return parse_rational(s);
  } catch (const Error& err) {
    fail(line, err.what());
  }
}

// Applies one task key; shared by the text and JSON readers, which both
// hand over the value as text.
void set_task_key(JobTask& t, const std::string& key, std::string_view value, int line) {
  if (std::find(t.keys.begin(), t.keys.end(), key) != t.keys.end()) fail(line, "duplicate key '" + key + "'");
  t.keys.push_back(key);
  if (key == "kind") {
    auto k = task_kind_from_name(trim(value));
    if (!k) fail(line, "unknown task kind '" + std::string(trim(value)) + "'");
    t.kind = *k;
  } else if (key == "points") {
    t.points = split_list(value, line, false);
  } else if (key == "e_max") {
    t.e_max = parse_int<std::uint32_t>(value, line, "e_max");
  } else if (key == "e") {
    t.e = parse_int<std::uint32_t>(value, line, "e");
  } else if (key == "ideal") {
    t.ideal = std::string(trim(value));
  } else if (key == "t") {
    for (const auto& item : split_list(value, line, false)) t.t.push_back(parse_rational_at(item, line));
  } else if (key == "tolerance") {
    t.tolerance = parse_double(value, line, "tolerance");
    if (!(*t.tolerance > 0)) fail(line, "tolerance must be positive");
  } else if (key == "budget_monomials") {
    t.budget_monomials = parse_int<std::uint64_t>(value, line, "budget");
  } else if (key == "special") {
    t.special = std::string(trim(value));
  } else if (key == "nearby") {
    t.nearby = split_list(value, line, false);
  } else if (key == "extra_vars") {
    t.extra_vars = parse_int<int>(value, line, "extra_vars");
  } else if (key == "random_points") {
    t.random_points = parse_int<std::size_t>(value, line, "random_points");
  } else if (key == "random_component") {
    t.random_component = std::string(trim(value));
  } else if (key == "seed") {
    t.seed = parse_int<std::uint64_t>(value, line, "seed");
  } else {
    fail(line, "unknown task key '" + key + "'");
  }
}

enum class Section { Top, Component, Point, Ideal, Task };

struct TextReader {
  JobFile job;
  Section section = Section::Top;
  std::set<std::string> seen_keys;
  bool p_set = false;

  void header(std::string_view h, int line) {
    const auto sp = h.find_first_of(" \t");
    if (sp == std::string_view::npos) fail(line, "section header needs a kind and a name");
    const auto kind = h.substr(0, sp);
    const std::string name(trim(h.substr(sp)));
    if (!is_name(name)) fail(line, "'" + name + "' is not a valid name");
    seen_keys.clear();
    auto dup = [&](const auto& v) {
      if (std::any_of(v.begin(), v.end(), [&](const auto& x) { return x.name == name; }))
        fail(line, std::string(kind) + " '" + name + "' declared twice");
    };
    if (kind == "component") {
      dup(job.components);
      job.components.push_back({name, {}, {}, {}, false});
      section = Section::Component;
    } else if (kind == "point") {
      dup(job.points);
      job.points.push_back({name, {}, {}, false});
      section = Section::Point;
    } else if (kind == "ideal") {
      dup(job.ideals);
      job.ideals.push_back({name, {}, {}});
      section = Section::Ideal;
    } else if (kind == "task") {
      dup(job.tasks);
      JobTask t;
      t.name = name;
      t.line = line;
      job.tasks.push_back(std::move(t));
      section = Section::Task;
    } else {
      fail(line, "unknown section kind '" + std::string(kind) + "'");
    }
  }

  void entry(const std::string& key, std::string_view value, int line) {
    // `prime` may repeat: one line per declared minimal prime
    if (key != "prime" && section != Section::Task && !seen_keys.insert(key).second)
      fail(line, "duplicate key '" + key + "'");
    switch (section) {
      case Section::Top:
        if (key != "p") fail(line, "unknown top-level key '" + key + "'");
        job.p = parse_int<std::uint64_t>(value, line, "characteristic");
        p_set = true;
        break;
      case Section::Component: {
        auto& c = job.components.back();
        if (key == "vars") c.vars = split_list(value, line);
        else if (key == "ideal") c.ideal = split_list(value, line);
        else if (key == "prime") {
          c.primes.push_back(split_list(value, line, false));
          c.has_primes = true;
        } else fail(line, "unknown component key '" + key + "'");
        break;
      }
      case Section::Point: {
        auto& pt = job.points.back();
        if (key == "component") pt.component = std::string(trim(value));
        else if (key == "coords")
          for (const auto& c : split_list(value, line)) pt.coords.push_back(parse_int<std::int64_t>(c, line, "coordinate"));
        else if (key == "whole") pt.whole = parse_bool(value, line);
        else fail(line, "unknown point key '" + key + "'");
        break;
      }
      case Section::Ideal: {
        auto& id = job.ideals.back();
        if (key == "component") id.component = std::string(trim(value));
        else if (key == "gens") id.gens = split_list(value, line, false);
        else fail(line, "unknown ideal key '" + key + "'");
        break;
      }
      case Section::Task:
        set_task_key(job.tasks.back(), key, value, line);
        break;
    }
  }
};

std::string json_scalar_text(const nlohmann::json& v, const std::string& key) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer() || v.is_number_unsigned() || v.is_number_float() || v.is_boolean()) return v.dump();
  fail(0, "key '" + key + "' needs a scalar value");
}

std::string json_list_text(const nlohmann::json& v, const std::string& key) {
  if (!v.is_array()) return json_scalar_text(v, key);
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += json_scalar_text(v[i], key);
  }
  return out;
}

std::vector<std::string> json_strings(const nlohmann::json& v, const std::string& key) {
  if (!v.is_array()) fail(0, "key '" + key + "' needs an array");
  std::vector<std::string> out;
  for (const auto& x : v) {
    if (!x.is_string()) fail(0, "key '" + key + "' needs an array of strings");
    out.push_back(x.get<std::string>());
  }
  return out;
}

std::string json_name(const nlohmann::json& obj, const char* what) {
  if (!obj.contains("name") || !obj["name"].is_string()) fail(0, std::string(what) + " without a string name");
  std::string n = obj["name"].get<std::string>();
  if (!is_name(n)) fail(0, "'" + n + "' is not a valid name");
  return n;
}

void check_keys(const nlohmann::json& obj, std::initializer_list<std::string_view> allowed, const char* what) {
  if (!obj.is_object()) fail(0, std::string(what) + " entries must be objects");
  for (const auto& [k, _] : obj.items())
    if (std::find(allowed.begin(), allowed.end(), k) == allowed.end())
      fail(0, "unknown " + std::string(what) + " key '" + k + "'");
}

template <typename T>
void require_unique(const std::vector<T>& v, const char* what) {
  std::set<std::string> names;
  for (const auto& x : v)
    if (!names.insert(x.name).second) fail(0, std::string(what) + " '" + x.name + "' declared twice");
}

// Keys each task kind reads, besides kind/tolerance/budget_monomials.
std::vector<std::string_view> task_keys(TaskKind k) {
  switch (k) {
    case TaskKind::Hk: return {"points", "e_max", "ideal"};
    case TaskKind::Fsig: return {"points", "e_max"};
    case TaskKind::Fedder: return {"points"};
    case TaskKind::Pair: return {"points", "e_max", "ideal", "t"};
    case TaskKind::Nu: return {"points", "e_max", "ideal"};
    case TaskKind::GlobalHk:
    case TaskKind::GlobalFsig: return {"points", "e_max", "random_points", "random_component", "seed"};
    case TaskKind::Semicontinuity: return {"special", "nearby", "e", "random_points", "seed"};
    case TaskKind::FlatCheck: return {"points", "e_max", "extra_vars", "ideal", "t"};
    case TaskKind::Classify: return {"points", "e_max"};
  }
  return {};
}

}  // namespace

std::string_view task_kind_name(TaskKind k) { return kTaskNames[static_cast<int>(k)]; }

std::optional<TaskKind> task_kind_from_name(std::string_view name) {
  for (int i = 0; i < static_cast<int>(std::size(kTaskNames)); ++i)
    if (kTaskNames[i] == name) return static_cast<TaskKind>(i);
  return std::nullopt;
}

std::string_view explain_task(TaskKind k) {
  switch (k) {
    case TaskKind::Hk:
      return "lambda_e = dim S/(I_0 + m^[q]), q = p^e, with the point moved to the origin.\n"
             "e_HK = lim lambda_e / q^d, estimated by fitting v + c/q through the last two terms.\n"
             "Kunz: lambda_e >= q^d, with equality for every e iff R is regular.\n"
             "Watanabe-Yoshida: an unmixed local ring is regular iff e_HK = 1.\n"
             "With `ideal = J` the task reports lambda(S/(I_0 + J_0^[q])) for an m-primary J.\n";
    case TaskKind::Fsig:
      return "a_e = lambda(S / (m^[q] : (I_0^[q] : I_0))), the free rank of F^e_* R.\n"
             "Computed as q^n - lambda(S / ((I_0^[q] : I_0) + m^[q])) by Matlis duality in S/m^[q].\n"
             "s = lim a_e / q^d. Huneke-Leuschke: s = 1 iff regular. Aberbach-Leuschke: s > 0 iff\n"
             "strongly F-regular. a_1 = 0 means R is not F-split, and then a_e = 0 for every e.\n";
    case TaskKind::Fedder:
      return "Fedder's criterion: S/I is F-pure at the point iff (I_0^[p] : I_0) is not inside m^[p].\n"
             "For a hypersurface (f) this reads f^(p-1) not in m^[p]. Also reports a_1, positive iff F-pure.\n";
    case TaskKind::Pair:
      return "a_e(a^t) = lambda(S / (m^[q] : a^k (I_0^[q] : I_0))) with k = ceil(t(q-1)).\n"
             "s(R, a^t) = lim a_e / q^d, the F-signature of the pair for the Cartier algebra of a^t.\n"
             "At t = 0 it is the ordinary splitting number; it is non-increasing in t.\n";
    case TaskKind::Nu:
      return "nu_e(a) = max{ r : a^r not inside I_0 + m^[q] }, by binary search over r.\n"
             "In a regular ring nu_e / q converges to the F-pure threshold of a (Mustata-Takagi-Watanabe).\n";
    case TaskKind::GlobalHk:
      return "Global e_HK = max of local e_HK over primes in Z_R = { P : ht P + alpha(P) = gamma(R) }.\n"
             "Samples are rational points (alpha = 0), so gamma = max component dimension and Z_R is the\n"
             "union of components attaining it. Off-Z samples are listed but excluded. The sampled maximum\n"
             "is a lower bound for the true one.\n";
    case TaskKind::GlobalFsig:
      return "Global s = min of local F-signatures over Spec R, and s = 0 whenever Z_R != Spec R.\n"
             "The sampled minimum is an upper bound for the true one.\n";
    case TaskKind::Semicontinuity:
      return "P -> lambda(R_P / P^[q] R_P) / q^(ht P) is upper semicontinuous on a locally equidimensional\n"
             "ring (Shepherd-Barron), so the special point must dominate every nearby point at each e.\n";
    case TaskKind::FlatCheck:
      return "T = R[t_1..t_k] localized at (m, t) is flat over R with regular closed fiber.\n"
             "Then lambda_T(e) = q^k lambda_R(e) and a_e(T) = q^k a_e(R), so the normalized values agree.\n"
             "For any flat local map e_HK(R) <= e_HK(T) and s(R) >= s(T).\n";
    case TaskKind::Classify:
      return "regular: e_HK estimate equals 1 exactly. f_pure: Fedder's criterion.\n"
             "e(R): Hilbert-Samuel multiplicity from the d-th difference of n -> lambda(R/m^n).\n"
             "HL check: (e(R) - 1)(1 - s) >= e_HK - 1 within a tolerance. Blickle-Enescu and\n"
             "Aberbach-Enescu: e_HK < 1 + max(1/d!, 1/e(R)) forces Gorenstein and strongly F-regular.\n";
  }
  return "";
}

Rational parse_rational(std::string_view s) {
  s = trim(s);
  const auto slash = s.find('/');
  auto num_text = s.substr(0, slash);
  std::int64_t num = 0, den = 1;
  auto read = [&](std::string_view part, std::int64_t& out) {
    part = trim(part);
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), out);
    if (part.empty() || ec != std::errc() || ptr != part.data() + part.size())
      throw Error(ErrorKind::ParseError, "'" + std::string(s) + "' is not a rational number");
  };
  read(num_text, num);
  if (slash != std::string_view::npos) read(s.substr(slash + 1), den);
  if (den == 0) throw Error(ErrorKind::ParseError, "zero denominator in '" + std::string(s) + "'");
  return Rational(num, den);
}

JobFile parse_job_text(std::string_view text) {
  TextReader r;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view l = raw;
    if (auto hash = l.find('#'); hash != std::string_view::npos) l = l.substr(0, hash);
    l = trim(l);
    if (l.empty()) continue;
    if (l.front() == '[') {
      if (l.back() != ']') fail(line, "unterminated section header");
      r.header(trim(l.substr(1, l.size() - 2)), line);
      continue;
    }
    const auto eq = l.find('=');
    if (eq == std::string_view::npos) fail(line, "expected 'key = value'");
    const std::string key(trim(l.substr(0, eq)));
    if (key.empty()) fail(line, "missing key");
    r.entry(key, l.substr(eq + 1), line);
  }
  if (!r.p_set) fail(0, "the characteristic 'p' is not set");
  return std::move(r.job);
}

JobFile parse_job_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& err) {
    fail(0, std::string("invalid JSON: ") + err.what());
  }
  check_keys(j, {"p", "components", "points", "ideals", "tasks"}, "top-level");
  JobFile job;
  if (!j.contains("p") || !j["p"].is_number_unsigned()) fail(0, "'p' must be a positive integer");
  job.p = j["p"].get<std::uint64_t>();
  auto array = [&](const char* key) {
    if (!j.contains(key)) return nlohmann::json::array();
    if (!j[key].is_array()) fail(0, std::string("'") + key + "' must be an array");
    return j[key];
  };
  for (const auto& c : array("components")) {
    check_keys(c, {"name", "vars", "ideal", "primes"}, "component");
    JobComponent comp{json_name(c, "component"), {}, {}, {}, false};
    if (c.contains("vars")) comp.vars = json_strings(c["vars"], "vars");
    if (c.contains("ideal")) comp.ideal = json_strings(c["ideal"], "ideal");
    if (c.contains("primes")) {
      if (!c["primes"].is_array()) fail(0, "'primes' must be an array of generator lists");
      for (const auto& q : c["primes"]) comp.primes.push_back(json_strings(q, "primes"));
      comp.has_primes = true;
    }
    job.components.push_back(std::move(comp));
  }
  for (const auto& p : array("points")) {
    check_keys(p, {"name", "component", "coords", "whole"}, "point");
    JobPoint pt{json_name(p, "point"), {}, {}, false};
    if (p.contains("component")) pt.component = json_scalar_text(p["component"], "component");
    if (p.contains("coords")) {
      if (!p["coords"].is_array()) fail(0, "'coords' must be an array");
      for (const auto& c : p["coords"]) {
        if (!c.is_number_integer()) fail(0, "coordinates must be integers");
        pt.coords.push_back(c.get<std::int64_t>());
      }
    }
    if (p.contains("whole")) {
      if (!p["whole"].is_boolean()) fail(0, "'whole' must be a boolean");
      pt.whole = p["whole"].get<bool>();
    }
    job.points.push_back(std::move(pt));
  }
  for (const auto& i : array("ideals")) {
    check_keys(i, {"name", "component", "gens"}, "ideal");
    JobIdeal id{json_name(i, "ideal"), {}, {}};
    if (i.contains("component")) id.component = json_scalar_text(i["component"], "component");
    if (i.contains("gens")) id.gens = json_strings(i["gens"], "gens");
    job.ideals.push_back(std::move(id));
  }
  for (const auto& t : array("tasks")) {
    if (!t.is_object()) fail(0, "task entries must be objects");
    JobTask task;
    task.name = json_name(t, "task");
    for (const auto& [k, v] : t.items())
      if (k != "name") set_task_key(task, k, json_list_text(v, k), 0);
    job.tasks.push_back(std::move(task));
  }
  require_unique(job.components, "component");
  require_unique(job.points, "point");
  require_unique(job.ideals, "ideal");
  require_unique(job.tasks, "task");
  return job;
}

JobFile load_job(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot read job file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (path.extension() == ".json") return parse_job_json(buf.str());
  return parse_job_text(buf.str());
}

CompiledJob compile_job(JobFile job) {
  if (job.p > 0xFFFFFFFFull) throw Error(ErrorKind::NotPrime, std::to_string(job.p) + " is out of range");
  const PrimeField F(job.p);
  CompiledJob out;

  std::vector<Component> comps;
  std::vector<RingPtr> rings;
  for (std::size_t i = 0; i < job.components.size(); ++i) {
    const auto& c = job.components[i];
    RingPtr ring = make_ring(F, c.vars);
    auto parse_all = [&](const std::vector<std::string>& src) {
      std::vector<Polynomial> gens;
      for (const auto& s : src) gens.push_back(parse_poly(s, ring));
      return Ideal(ring, std::move(gens));
    };
    Component comp{c.name, parse_all(c.ideal), std::nullopt};
    if (c.has_primes) {
      std::vector<Ideal> primes;
      for (const auto& q : c.primes) primes.push_back(parse_all(q));
      comp.declared_min_primes = std::move(primes);
    }
    out.component_index[c.name] = i;
    rings.push_back(ring);
    comps.push_back(std::move(comp));
  }
  if (!comps.empty()) out.ring.emplace(std::move(comps));

  auto component_of = [&](const std::string& name, const std::string& who) -> std::size_t {
    auto it = out.component_index.find(name);
    if (it == out.component_index.end()) fail(0, who + " refers to unknown component '" + name + "'");
    return it->second;
  };

  for (const auto& pt : job.points) {
    const std::size_t ci = component_of(pt.component, "point '" + pt.name + "'");
    PrimeSample s;
    s.component = ci;
    s.label = pt.name;
    s.whole_component = pt.whole;
    const auto& ring = rings[ci];
    if (pt.whole) {
      if (!pt.coords.empty()) fail(0, "point '" + pt.name + "' is whole-component and cannot have coordinates");
    } else {
      if (pt.coords.size() != ring->nvars())
        fail(0, "point '" + pt.name + "' has " + std::to_string(pt.coords.size()) + " coordinates, component has " +
                    std::to_string(ring->nvars()) + " variables");
      for (auto c : pt.coords) s.point.push_back(F.from_int(c));
      for (const auto& g : out.ring->component(ci).ideal.gens())
        if (g.evaluate(s.point).value != 0)
          throw Error(ErrorKind::PointNotOnVariety,
                      "point '" + pt.name + "': generator " + g.to_string() + " does not vanish");
    }
    out.points.emplace(pt.name, std::move(s));
  }

  std::map<std::string, std::size_t> ideal_component;
  for (const auto& id : job.ideals) {
    const std::size_t ci = component_of(id.component, "ideal '" + id.name + "'");
    std::vector<Polynomial> gens;
    for (const auto& g : id.gens) gens.push_back(parse_poly(g, rings[ci]));
    out.ideals.emplace(id.name, Ideal(rings[ci], std::move(gens)));
    ideal_component[id.name] = ci;
  }

  for (const auto& t : job.tasks) {
    const std::string who = "task '" + t.name + "'";
    if (std::find(t.keys.begin(), t.keys.end(), "kind") == t.keys.end()) fail(t.line, who + " has no kind");
    const auto allowed = task_keys(t.kind);
    for (const auto& k : t.keys) {
      if (k == "kind" || k == "tolerance" || k == "budget_monomials") continue;
      if (std::find(allowed.begin(), allowed.end(), k) == allowed.end())
        fail(t.line, who + ": key '" + k + "' does not apply to kind " + std::string(task_kind_name(t.kind)));
    }
    auto point = [&](const std::string& name) -> const PrimeSample& {
      auto it = out.points.find(name);
      if (it == out.points.end()) fail(t.line, who + " refers to unknown point '" + name + "'");
      return it->second;
    };
    std::optional<std::size_t> comp;
    auto same_component = [&](const PrimeSample& s) {
      if (comp && *comp != s.component) fail(t.line, who + ": all points must lie on one component");
      comp = s.component;
    };
    const bool global = t.kind == TaskKind::GlobalHk || t.kind == TaskKind::GlobalFsig;
    for (const auto& n : t.points) {
      const auto& s = point(n);
      if (!global) {
        same_component(s);
        if (s.whole_component) fail(t.line, who + ": whole-component point '" + n + "' only fits global tasks");
      }
    }
    if (t.kind == TaskKind::Semicontinuity) {
      if (!t.special) fail(t.line, who + " needs a special point");
      same_component(point(*t.special));
      for (const auto& n : t.nearby) same_component(point(n));
      if (t.nearby.empty() && t.random_points.value_or(0) == 0)
        fail(t.line, who + " needs nearby points or random_points");
    } else if (!global && t.points.empty()) {
      fail(t.line, who + " needs at least one point");
    } else if (global && t.points.empty() && t.random_points.value_or(0) == 0) {
      fail(t.line, who + " needs points or random_points");
    }
    if (t.random_component) component_of(*t.random_component, who);
    if (t.ideal) {
      auto it = out.ideals.find(*t.ideal);
      if (it == out.ideals.end()) fail(t.line, who + " refers to unknown ideal '" + *t.ideal + "'");
      const std::size_t ci = ideal_component.at(*t.ideal);
      if (comp && *comp != ci) fail(t.line, who + ": ideal '" + *t.ideal + "' lives on another component");
    }
    if ((t.kind == TaskKind::Pair || t.kind == TaskKind::Nu) && !t.ideal) fail(t.line, who + " needs an ideal");
    if (t.kind == TaskKind::Pair && t.t.empty()) fail(t.line, who + " needs t values");
    if (t.kind == TaskKind::FlatCheck && t.ideal.has_value() != !t.t.empty())
      fail(t.line, who + ": a pair check needs both ideal and t");
    if (t.kind == TaskKind::FlatCheck && t.t.size() > 1) fail(t.line, who + ": flat_check takes a single t");
    for (const auto& r : t.t)
      if (r < Rational(0)) fail(t.line, who + ": t must be non-negative");
  }
  out.source = std::move(job);
  return out;
}

}  // namespace charp
