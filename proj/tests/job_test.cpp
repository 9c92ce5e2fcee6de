#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "charp/report.hpp"
#include "expect.hpp"

using namespace charp;
using namespace charp::testing;
namespace fs = std::filesystem;

namespace {

const char* kA1Job = R"(# A1 at p = 7
p = 7

[component A1]
vars = x, y, z
ideal = x*y - z^2

[point origin]
component = A1
coords = 0, 0, 0

[task hk]
kind = hk
points = origin
e_max = 2
)";

fs::path scratch_dir() {
  const auto dir = fs::temp_directory_path() / ("charp_test_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

fs::path write(const fs::path& path, const std::string& body) {
  std::ofstream(path, std::ios::binary) << body;
  return path;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Exit status of `charp <args>` with stdout and stderr discarded.
int cli(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " CHARP_CLI " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Report run_text(const std::string& text, const RunOptions& opts = {}) {
  return run_job(compile_job(parse_job_text(text)), "t", opts);
}

}  // namespace

TEST(JobParse, TextFormatBasics) {
  const auto job = parse_job_text(kA1Job);
  EXPECT_EQ(job.p, 7u);
  ASSERT_EQ(job.components.size(), 1u);
  EXPECT_EQ(job.components[0].vars, (std::vector<std::string>{"x", "y", "z"}));
  ASSERT_EQ(job.tasks.size(), 1u);
  EXPECT_EQ(job.tasks[0].kind, TaskKind::Hk);
  EXPECT_EQ(job.tasks[0].e_max, 2u);
}

TEST(JobParse, UnknownAndDuplicateKeysAreErrors) {
  EXPECT_TRUE(throws_kind(ErrorKind::ParseError, [] { parse_job_text("p = 5\nq = 3\n"); }));
  EXPECT_TRUE(throws_kind(ErrorKind::ParseError, [] { parse_job_text("p = 5\n[component c]\nvars = x\nvarz = y\n"); }));
  EXPECT_TRUE(throws_kind(ErrorKind::ParseError, [] { parse_job_text("p = 5\np = 7\n"); }));
  EXPECT_TRUE(throws_kind(ErrorKind::ParseError, [] { parse_job_text("[component c]\nvars = x\n"); }));
  EXPECT_TRUE(throws_kind(ErrorKind::ParseError, [] { parse_job_text("p = 5\n[widget w]\n"); }));
  EXPECT_TRUE(throws_kind(ErrorKind::ParseError, [] { parse_job_text("p = 5\njust text\n"); }));
}

TEST(JobParse, ErrorsCarryLineNumbers) {
  try {
    parse_job_text("p = 5\n\n[task t]\nkind = hk\ne_mx = 2\n");
    FAIL() << "expected ParseError";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("line 5"), std::string::npos) << e.what();
  }
}

TEST(JobParse, JsonMatchesText) {
  const auto json = parse_job_json(R"({"p": 7,
    "components": [{"name": "A1", "vars": ["x", "y", "z"], "ideal": ["x*y - z^2"]}],
    "points": [{"name": "origin", "component": "A1", "coords": [0, 0, 0]}],
    "tasks": [{"name": "hk", "kind": "hk", "points": ["origin"], "e_max": 2}]})");
  const auto a = render_tsv(run_job(compile_job(json), "t"));
  const auto b = render_tsv(run_job(compile_job(parse_job_text(kA1Job)), "t"));
  EXPECT_EQ(a, b);
  EXPECT_TRUE(throws_kind(ErrorKind::ParseError, [] { parse_job_json(R"({"p": 5, "extra": 1})"); }));
  EXPECT_TRUE(throws_kind(ErrorKind::ParseError, [] { parse_job_json("{not json"); }));
}

TEST(JobCompile, ValidationErrors) {
  auto compile = [](const std::string& s) { compile_job(parse_job_text(s)); };
  EXPECT_TRUE(throws_kind(ErrorKind::NotPrime, [&] { compile("p = 9\n"); }));
  EXPECT_TRUE(throws_kind(ErrorKind::PointNotOnVariety, [&] {
    compile("p = 5\n[component c]\nvars = x, y\nideal = x*y\n[point q]\ncomponent = c\ncoords = 1, 1\n");
  }));
  EXPECT_TRUE(throws_kind(ErrorKind::UnknownVariable, [&] { compile("p = 5\n[component c]\nvars = x\nideal = y\n"); }));
  EXPECT_TRUE(throws_kind(ErrorKind::ParseError, [&] {
    compile("p = 5\n[component c]\nvars = x\n[task t]\nkind = hk\npoints = nowhere\ne_max = 2\n");
  }));
  // e is not a key of hk
  EXPECT_TRUE(throws_kind(ErrorKind::ParseError, [&] {
    compile("p = 5\n[component c]\nvars = x\n[point o]\ncomponent = c\ncoords = 0\n[task t]\nkind = hk\npoints = o\ne = 2\n");
  }));
  EXPECT_TRUE(throws_kind(ErrorKind::ParseError, [&] {
    compile("p = 5\n[component c]\nvars = x\n[point o]\ncomponent = c\ncoords = 0\n[task t]\nkind = pair\npoints = o\n");
  }));
}

TEST(JobParse, Rationals) {
  EXPECT_EQ(parse_rational("1/2"), Rational(1, 2));
  EXPECT_EQ(parse_rational("3"), Rational(3));
  EXPECT_EQ(parse_rational(" 2/4 "), Rational(1, 2));
  EXPECT_TRUE(throws_kind(ErrorKind::ParseError, [] { parse_rational("1/0"); }));
  EXPECT_TRUE(throws_kind(ErrorKind::ParseError, [] { parse_rational("half"); }));
}

TEST(Report, TsvRowsAndFormatting) {
  const auto tsv = render_tsv(run_text(kA1Job));
  EXPECT_EQ(tsv,
            "task\tcomponent\tpoint\te\tq\tlambda\tnorm\ta_e\ts_e\n"
            "hk\tA1\torigin\t1\t7\t73\t73/49 (1.489795918367)\t\t\n"
            "hk\tA1\torigin\t2\t49\t3601\t3601/2401 (1.499791753436)\t\t\n");
  EXPECT_EQ(format_decimal(Rational(1, 3)), "0.333333333333");
  EXPECT_EQ(format_decimal(Rational(2, 3)), "0.666666666667");
  EXPECT_EQ(format_decimal(Rational(-1, 2), 2), "-0.50");
  EXPECT_EQ(format_rational(Rational(3, 2)), "3/2 (1.500000000000)");
}

TEST(Report, EmptyTaskListIsOk) {
  const auto rep = run_text("p = 5\n");
  EXPECT_TRUE(rep.all_ok());
  EXPECT_EQ(render_tsv(rep), "task\tcomponent\tpoint\te\tq\tlambda\tnorm\ta_e\ts_e\n");
}

TEST(Report, BudgetFailureIsIsolated) {
  const std::string job = std::string(kA1Job) + "\n[task tiny]\nkind = hk\npoints = origin\ne_max = 2\nbudget_monomials = 10\n";
  const auto rep = run_text(job);
  ASSERT_EQ(rep.tasks.size(), 2u);
  EXPECT_TRUE(rep.tasks[0].ok);
  EXPECT_FALSE(rep.tasks[1].ok);
  EXPECT_EQ(rep.tasks[1].error, "ResourceBudgetExceeded");
  EXPECT_EQ(rep.tasks[0].rows.size(), 2u);
}

TEST(Report, MonomialCapOverridesTaskBudget) {
  RunOptions opts;
  opts.monomial_cap = 100;
  const auto rep = run_text(kA1Job, opts);
  EXPECT_FALSE(rep.tasks[0].ok);
  EXPECT_EQ(rep.tasks[0].error, "ResourceBudgetExceeded");
}

TEST(Report, JsonCarriesExactAndDecimal) {
  const auto j = render_json(run_text(kA1Job));
  EXPECT_EQ(j["p"], 7);
  const auto& row = j["tasks"][0]["rows"][1];
  EXPECT_EQ(row["norm"]["exact"], "3601/2401");
  EXPECT_EQ(row["norm"]["decimal"], "1.499791753436");
  EXPECT_EQ(j["tasks"][0]["details"]["origin"]["estimate"]["value"]["exact"], "515/343");
  EXPECT_TRUE(j["tasks"][0].contains("wall_seconds"));
  EXPECT_TRUE(j["tasks"][0]["budget_usage"].contains("max_monomials"));
}

TEST(Report, CheckFailuresAndTaskKinds) {
  const std::string job = std::string(kA1Job) + R"(
[task semi]
kind = semicontinuity
special = origin
random_points = 3
e = 1

[task flat]
kind = flat_check
points = origin
e_max = 1
extra_vars = 1

[task fed]
kind = fedder
points = origin

[task cls]
kind = classify
points = origin
e_max = 2
)";
  const auto rep = run_text(job);
  EXPECT_TRUE(rep.all_ok());
  EXPECT_EQ(rep.tasks[1].rows.size(), 4u);
  EXPECT_EQ(rep.tasks[2].rows[1].lambda, 511u);
  EXPECT_EQ(rep.tasks[3].rows[0].a_e, 25u);
}

TEST(Cli, ExitCodesAndOutputs) {
  const auto dir = scratch_dir();
  const auto good = write(dir / "a1.job", kA1Job);
  EXPECT_EQ(cli("run " + good.string()), 0);
  EXPECT_TRUE(fs::exists(dir / "a1.report.json"));
  EXPECT_TRUE(fs::exists(dir / "a1.report.tsv"));

  EXPECT_EQ(cli("run " + write(dir / "bad.job", "p = 9\n").string()), 1);
  EXPECT_EQ(cli("run " + write(dir / "typo.job", "p = 5\nbogus = 1\n").string()), 1);
  EXPECT_EQ(cli("run " + write(dir / "empty.job", "p = 5\n").string()), 0);
  EXPECT_EQ(cli("run " + (dir / "missing.job").string()), 1);

  const auto budget = write(dir / "budget.job", std::string(kA1Job) +
                                                    "\n[task tiny]\nkind = hk\npoints = origin\ne_max = 2\n"
                                                    "budget_monomials = 10\n");
  EXPECT_EQ(cli("run " + budget.string()), 2);
  EXPECT_EQ(cli("run " + good.string(), "CHARP_BUDGET_MONOMIALS=50"), 2);
  EXPECT_EQ(cli("explain hk"), 0);
  EXPECT_EQ(cli("explain nonsense"), 1);
  fs::remove_all(dir);
}

TEST(Cli, TsvIsByteIdenticalAcrossRuns) {
  const auto dir = scratch_dir();
  const auto job = write(dir / "det.job", std::string(kA1Job) + R"(
[task ghk]
kind = global_hk
points = origin
random_points = 4
e_max = 2

[task semi]
kind = semicontinuity
special = origin
random_points = 4
e = 1
)");
  ASSERT_EQ(cli("run " + job.string() + " --jobs 1"), 0);
  const auto first = slurp(dir / "det.report.tsv");
  ASSERT_EQ(cli("run " + job.string() + " --jobs 4"), 0);
  EXPECT_EQ(slurp(dir / "det.report.tsv"), first);
  ASSERT_EQ(cli("run " + job.string()), 0);
  EXPECT_EQ(slurp(dir / "det.report.tsv"), first);
  fs::remove_all(dir);
}

TEST(Cli, JsonOnlySkipsTsv) {
  const auto dir = scratch_dir();
  const auto job = write(dir / "j.job", kA1Job);
  ASSERT_EQ(cli("run --json-only " + job.string()), 0);
  EXPECT_TRUE(fs::exists(dir / "j.report.json"));
  EXPECT_FALSE(fs::exists(dir / "j.report.tsv"));
  const auto j = nlohmann::json::parse(slurp(dir / "j.report.json"));
  EXPECT_EQ(j["ok"], true);
  fs::remove_all(dir);
}

TEST(Explain, EveryKindHasText) {
  for (int i = 0; i <= static_cast<int>(TaskKind::Classify); ++i) {
    const auto k = static_cast<TaskKind>(i);
    EXPECT_FALSE(explain_task(k).empty());
    EXPECT_EQ(task_kind_from_name(task_kind_name(k)), k);
  }
}

TEST(Report, ShippedJobsRunCleanly) {
  for (const char* name : {"a1.job", "products.json"}) {
    const auto path = std::filesystem::path(CHARP_JOBS_DIR) / name;
    const auto rep = run_job(compile_job(load_job(path)), path.stem().string());
    EXPECT_TRUE(rep.all_ok()) << name;
    EXPECT_FALSE(rep.tasks.empty()) << name;
  }
}
