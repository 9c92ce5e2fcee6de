#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "charp/error.hpp"
#include "charp/job.hpp"
#include "charp/report.hpp"
#include "charp/selftest.hpp"

namespace {

std::optional<std::uint64_t> env_cap() {
  const char* v = std::getenv("CHARP_BUDGET_MONOMIALS");
  if (v == nullptr || *v == '\0') return std::nullopt;
  try {
    std::size_t used = 0;
    const auto cap = std::stoull(v, &used);
    if (used == std::string(v).size() && cap > 0) return cap;
  } catch (const std::exception&) {
  }
  std::cerr << "charp: ignoring malformed CHARP_BUDGET_MONOMIALS='" << v << "'\n";
  return std::nullopt;
}

bool write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  out << body;
  return static_cast<bool>(out);
}

int run_command(const std::string& job_path, charp::RunOptions opts, bool json_only) {
  charp::CompiledJob job;
  try {
    job = charp::compile_job(charp::load_job(job_path));
  } catch (const charp::Error& e) {
    std::cerr << "charp: " << e.what() << '\n';
    return 1;
  }
  opts.monomial_cap = env_cap();

  const std::filesystem::path path(job_path);
  const charp::Report report = charp::run_job(job, path.stem().string(), opts);
  const std::string json = charp::render_json(report).dump(2) + "\n";

  auto out_path = [&](const char* ext) {
    auto p = path;
    return p.replace_extension(ext);
  };
  if (!write_file(out_path(".report.json"), json)) {
    std::cerr << "charp: cannot write " << out_path(".report.json") << '\n';
    return 1;
  }
  if (json_only) {
    std::cout << json;
  } else {
    const std::string tsv = charp::render_tsv(report);
    if (!write_file(out_path(".report.tsv"), tsv)) {
      std::cerr << "charp: cannot write " << out_path(".report.tsv") << '\n';
      return 1;
    }
    std::cout << tsv;
  }
  for (const auto& t : report.tasks)
    if (!t.ok) std::cerr << "charp: task " << t.name << " failed: " << t.message << '\n';
  return report.all_ok() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact prime-characteristic F-invariants of polynomial quotients"};
  app.require_subcommand(1);

  charp::RunOptions opts;
  std::string job_path;
  bool json_only = false;
  double tolerance = 0;
  std::uint64_t budget = 0;

  auto* run = app.add_subcommand("run", "Run a job file and write <job>.report.json and <job>.report.tsv");
  run->add_option("job", job_path, "Job file (.json for JSON, anything else for the text format)")
      ->required();
  auto* tol_opt = run->add_option("--tolerance", tolerance, "Default convergence tolerance")
                      ->check(CLI::PositiveNumber);
  auto* budget_opt =
      run->add_option("--budget-monomials", budget, "Default per-task monomial budget")->check(CLI::PositiveNumber);
  run->add_option("--jobs", opts.jobs, "Worker threads (0 keeps the OpenMP default)")->check(CLI::NonNegativeNumber);
  run->add_flag("--json-only", json_only, "Write only the JSON report and print it to stdout");

  int count = 50;
  std::uint64_t seed = 20240601;
  auto* self = app.add_subcommand("selftest", "Run the golden corpus and the randomized property suites");
  self->add_option("--instances", count, "Random instances per property suite")->check(CLI::PositiveNumber);
  self->add_option("--seed", seed, "Seed for the property suites");

  std::string task;
  auto* explain = app.add_subcommand("explain", "Print the formula and theorem behind a task kind");
  explain->add_option("task", task, "hk, fsig, fedder, pair, nu, global_hk, global_fsig, semicontinuity, flat_check, classify")
      ->required();

  CLI11_PARSE(app, argc, argv);

  if (*run) {
    if (*tol_opt) opts.tolerance = tolerance;
    if (*budget_opt) opts.budget_monomials = budget;
    return run_command(job_path, opts, json_only);
  }
  if (*self) return charp::selftest::run(std::cout, count, seed);

  const auto kind = charp::task_kind_from_name(task);
  if (!kind) {
    std::cerr << "charp: unknown task kind '" << task << "'\n";
    return 1;
  }
  std::cout << task << "\n" << charp::explain_task(*kind);
  return 0;
}
