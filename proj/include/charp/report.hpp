#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "charp/job.hpp"

namespace charp {

struct RunOptions {
  int jobs = 0;  // 0 keeps the OpenMP default
  std::optional<double> tolerance;
  std::optional<std::uint64_t> budget_monomials;
  /// Hard ceiling applied after task-level budgets.
  std::optional<std::uint64_t> monomial_cap;
};

/// One TSV line: task, component, point, e, q, lambda, norm, a_e, s_e.
struct TableRow {
  std::string component;
  std::string point;
  std::uint32_t e = 0;
  std::uint64_t q = 1;
  std::optional<std::uint64_t> lambda;
  std::optional<Rational> norm;
  std::optional<std::uint64_t> a_e;
  std::optional<Rational> s_e;
};

struct TaskResult {
  std::string name;
  TaskKind kind = TaskKind::Hk;
  bool ok = true;
  /// ErrorKind name, or "CheckFailed" when a theorem-backed check fails.
  std::string error;
  std::string message;
  std::vector<TableRow> rows;
  nlohmann::json details = nlohmann::json::object();
  double seconds = 0;
  std::uint64_t max_basis = 0;
  std::uint64_t pairs = 0;
  std::uint64_t max_monomials = 0;
};

struct Report {
  std::string job;
  std::uint64_t p = 0;
  std::vector<TaskResult> tasks;
  bool all_ok() const noexcept;
};

/// Runs every task; a failing task records its error and the rest continue.
Report run_job(const CompiledJob& job, const std::string& job_name, const RunOptions& opts = {});

/// "num/den (d.dddddddddddd)", the decimal rounded to 12 places.
std::string format_rational(const Rational& r);
std::string format_decimal(const Rational& r, int places = 12);

std::string render_tsv(const Report& report);
nlohmann::json render_json(const Report& report);

nlohmann::json to_json(const Rational& r);
nlohmann::json to_json(const LimitEstimate& est);

}  // namespace charp
