#pragma once

// Job files: a small sectioned key/value format (grammar in docs/job_format.md)
// or JSON with the same schema. Parsing only checks syntax and key names;
// compile_job resolves names, parses polynomials and validates the ring.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "charp/spectrum.hpp"

namespace charp {

enum class TaskKind { Hk, Fsig, Fedder, Pair, Nu, GlobalHk, GlobalFsig, Semicontinuity, FlatCheck, Classify };

std::string_view task_kind_name(TaskKind k);
std::optional<TaskKind> task_kind_from_name(std::string_view name);
/// Formula and classical result behind a task kind, for `charp explain`.
std::string_view explain_task(TaskKind k);

struct JobComponent {
  std::string name;
  std::vector<std::string> vars;
  std::vector<std::string> ideal;
  std::vector<std::vector<std::string>> primes;
  bool has_primes = false;
};

struct JobPoint {
  std::string name;
  std::string component;
  std::vector<std::int64_t> coords;
  bool whole = false;
};

struct JobIdeal {
  std::string name;
  std::string component;
  std::vector<std::string> gens;
};

struct JobTask {
  std::string name;
  TaskKind kind = TaskKind::Hk;
  std::vector<std::string> points;
  std::optional<std::uint32_t> e_max;
  std::optional<std::uint32_t> e;
  std::optional<std::string> ideal;
  std::vector<Rational> t;
  std::optional<double> tolerance;
  std::optional<std::uint64_t> budget_monomials;
  std::optional<std::string> special;
  std::vector<std::string> nearby;
  std::optional<int> extra_vars;
  std::optional<std::size_t> random_points;
  std::optional<std::string> random_component;
  std::optional<std::uint64_t> seed;
  /// Keys given in the file, in order; used to reject keys the kind ignores.
  std::vector<std::string> keys;
  int line = 0;
};

struct JobFile {
  std::uint64_t p = 0;
  std::vector<JobComponent> components;
  std::vector<JobPoint> points;
  std::vector<JobIdeal> ideals;
  std::vector<JobTask> tasks;
};

/// Throws Error(ParseError) with a line number on malformed input.
JobFile parse_job_text(std::string_view text);
JobFile parse_job_json(std::string_view text);
/// Dispatches on the extension: .json is JSON, anything else the text format.
JobFile load_job(const std::filesystem::path& path);

Rational parse_rational(std::string_view s);

/// Resolved job: one RingPresentation, named samples and ideals.
struct CompiledJob {
  JobFile source;
  std::optional<RingPresentation> ring;  // unset only for a job without components
  std::map<std::string, std::size_t> component_index;
  std::map<std::string, PrimeSample> points;
  std::map<std::string, Ideal> ideals;
};

/// Throws NotPrime, SyntaxError, UnknownVariable, PointNotOnVariety or
/// ParseError (dangling names, keys that do not fit the task kind).
CompiledJob compile_job(JobFile job);

}  // namespace charp
