#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "tpb/experiment.hpp"
#include "tpb/report_io.hpp"

using namespace tpb;

namespace {

ExperimentConfig weighted_config(std::uint64_t trials, std::uint64_t horizon = 5000) {
  auto c = parse_config(R"(
arms = [[2, 0, 0.5], [0, 2, 0.5]]
preference = [0.2, 0.2]
weights = [0.1, 0.1, 1.0]
horizon = 5000
seed = 11
baselines = ucb1, random
)");
  c.trials = trials;
  c.horizon = horizon;
  return c;
}

}  // namespace

TEST(MeanAndStderr, Formula) {
  auto [m, se] = mean_and_stderr({1.0, 2.0, 3.0, 4.0});
  EXPECT_DOUBLE_EQ(m, 2.5);
  EXPECT_DOUBLE_EQ(se, std::sqrt((2.25 + 0.25 + 0.25 + 2.25) / 3.0 / 4.0));
  auto [m1, se1] = mean_and_stderr({7.0});
  EXPECT_EQ(m1, 7.0);
  EXPECT_EQ(se1, 0.0);
}

TEST(RunExperiment, SingleTrialEqualsDirectRun) {
  const auto c = weighted_config(1);
  const auto r = run_experiment(c);
  const auto p = resolve_problem(c);
  TrialOptions opts;
  opts.checkpoints = effective_checkpoints(c);
  RewardStream s(derive_subseed(c.base_seed, 0));
  const auto tr = run_trial(*p.finite, *p.probe, p.schedule, c.horizon, s, opts);
  const auto* curve = r.curve(kTwoPhasePolicy);
  ASSERT_NE(curve, nullptr);
  ASSERT_EQ(curve->points.size(), tr.checkpoint_regret().size());
  for (std::size_t i = 0; i < curve->points.size(); ++i) {
    EXPECT_EQ(curve->points[i].mean, tr.checkpoint_regret()[i]);
    EXPECT_EQ(curve->points[i].stderr_, 0.0);
  }
}

TEST(RunExperiment, DoublingTrialsShrinksStderrBySqrtTwo) {
  auto c = parse_config("dimension = 3\narm_count = 20\ninstance_seed = 2\nhorizon = 3000\nbounds = off\n"
                        "baselines = random\nseed = 5\n");
  c.trials = 400;
  const auto r1 = run_experiment(c, {4, {}});
  c.trials = 800;
  const auto r2 = run_experiment(c, {4, {}});
  for (const char* policy : {"two_phase", "random"}) {
    const double s1 = r1.curve(policy)->points.back().stderr_;
    const double s2 = r2.curve(policy)->points.back().stderr_;
    EXPECT_NEAR(s1 / s2, std::sqrt(2.0), 0.2 * std::sqrt(2.0)) << policy;
  }
}

TEST(RunExperiment, DeterministicAndJobsInvariant) {
  const auto c = weighted_config(24);
  const auto a = format_csv(run_experiment(c, {1, {}}));
  const auto b = format_csv(run_experiment(c, {1, {}}));
  const auto d = format_csv(run_experiment(c, {7, {}}));
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, d);
}

TEST(RunExperiment, CheckpointMeansNonDecreasing) {
  const auto r = run_experiment(weighted_config(10), {2, {}});
  ASSERT_EQ(r.curves.size(), 3u);
  for (const auto& c : r.curves)
    for (std::size_t i = 1; i < c.points.size(); ++i) EXPECT_GE(c.points[i].mean, c.points[i - 1].mean) << c.policy;
}

TEST(RunExperiment, BoundsAndProvenance) {
  const auto c = weighted_config(30);
  const auto r = run_experiment(c);
  ASSERT_TRUE(r.constants);
  EXPECT_EQ(r.constants->L_prime, 7u);
  EXPECT_EQ(r.bound_status, "ok");
  EXPECT_EQ(r.provenance.config_hash, config_hash(c));
  EXPECT_EQ(r.provenance.seed, 11u);
  EXPECT_FALSE(r.provenance.version.empty());
  for (const auto& p : r.curve(kTwoPhasePolicy)->points) {
    ASSERT_TRUE(p.bound);
    EXPECT_NEAR(*p.bound, bound_finite(*r.constants, Schedule::lls(), p.t), 1e-12);
    EXPECT_FALSE(p.violation);
  }
  for (const auto& p : r.curve("ucb1")->points) EXPECT_FALSE(p.bound);
  EXPECT_FALSE(r.has_violation());
}

TEST(RunExperiment, TheoryErrorsFollowBoundPolicy) {
  auto c = parse_config("arms = [[1, 0], [0, 1]]\npreference = [1, 0.2]\nhorizon = 100\n");
  EXPECT_THROW(run_experiment(c), TheoryError);
  c.bounds = BoundPolicy::Optional;
  auto r = run_experiment(c);
  EXPECT_NE(r.bound_status.find("not admissible"), std::string::npos);
  EXPECT_FALSE(r.curves[0].points[0].bound);
  c.bounds = BoundPolicy::Off;
  r = run_experiment(c);
  EXPECT_EQ(r.bound_status, "off");
  EXPECT_FALSE(r.constants);
}

TEST(RunExperiment, SphereModeUsesInfiniteBound) {
  const auto r = run_experiment(parse_config("mode = sphere\npreference = [0.6, 0.8]\nhorizon = 2000\ntrials = 5\n"));
  ASSERT_TRUE(r.sphere_constants);
  EXPECT_FALSE(r.m);
  for (const auto& p : r.curves[0].points) EXPECT_NEAR(*p.bound, bound_infinite(*r.sphere_constants, p.t), 1e-9);
}

TEST(RunExperiment, ViolationFlag) {
  ExperimentReport r;
  r.curves.push_back({"two_phase", {{10, 5.0, 0.1, 4.0, true}}});
  EXPECT_TRUE(r.has_violation());
}

#ifdef TPB_CLI_PATH
namespace {

struct CliRun {
  int code;
  std::string out;
};

CliRun run_cli(const std::string& args) {
  const auto log = std::filesystem::temp_directory_path() / "tpb_cli_test.log";
  const std::string cmd = std::string(TPB_CLI_PATH) + " " + args + " > " + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  std::ifstream in(log);
  std::ostringstream s;
  s << in.rdbuf();
  return {WEXITSTATUS(status), s.str()};
}

std::filesystem::path write_config(const std::string& name, const std::string& text) {
  const auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << text;
  return p;
}

}  // namespace

TEST(Cli, SuccessWritesOutputs) {
  const auto cfg = write_config("tpb_ok.cfg", "arms = [[2, 0, 0.5], [0, 2, 0.5]]\npreference = [0.2, 0.2]\n"
                                              "weights = [0.1, 0.1, 1.0]\nhorizon = 1000\ntrials = 4\n");
  const auto out = std::filesystem::temp_directory_path() / "tpb_cli_out";
  std::filesystem::remove_all(out);
  const auto r = run_cli("--config " + cfg.string() + " --out " + out.string() + " --jobs 2");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(std::filesystem::exists(out / "results.csv"));
  EXPECT_TRUE(std::filesystem::exists(out / "curve_bound.csv"));
  EXPECT_TRUE(std::filesystem::exists(out / "report.json"));
}

TEST(Cli, OverridesTakePrecedence) {
  const auto cfg = write_config("tpb_ovr.cfg", "arms = [[2, 0, 0.5], [0, 2, 0.5]]\npreference = [0.2, 0.2]\n"
                                               "weights = [0.1, 0.1, 1.0]\nhorizon = 100\ntrials = 4\nseed = 1\n");
  const auto out = std::filesystem::temp_directory_path() / "tpb_cli_ovr";
  ASSERT_EQ(run_cli("--config " + cfg.string() + " --out " + out.string() + " --trials 3 --seed 77").code, 0);
  std::ifstream in(out / "results.csv");
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  EXPECT_EQ(row.substr(row.size() - 5), ",3,77");
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_cli("--config /nonexistent.cfg").code, 1);
  EXPECT_EQ(run_cli("--bogus-flag").code, 1);
  EXPECT_EQ(run_cli("--help").code, 0);
  const auto bad = write_config("tpb_bad.cfg", "mode = sphere\narms = [[1, 0], [0, 1]]\nhorizon = 5\n");
  const auto r = run_cli("--config " + bad.string());
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("sphere mode forbids"), std::string::npos) << r.out;
  const auto theory = write_config("tpb_theory.cfg", "arms = [[1, 0], [0, 1]]\npreference = [1, 0.2]\nhorizon = 5\n");
  const auto t = run_cli("--config " + theory.string() + " --out /tmp/tpb_cli_theory");
  EXPECT_EQ(t.code, 1);
  EXPECT_NE(t.out.find("bounds = optional"), std::string::npos) << t.out;
}

TEST(Cli, DryRunPrintsDerivedQuantities) {
  const auto cfg = write_config("tpb_dry.cfg", "arms = [[1, 0, 1], [0, 1, 1]]\npreference = [0.5, -0.25]\n"
                                               "horizon = 100\nschedule = linear_over_n\n");
  const auto r = run_cli("--config " + cfg.string() + " --dry-run");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("V: 0"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("alpha*"), std::string::npos);
  EXPECT_NE(r.out.find("gamma"), std::string::npos);
}
#endif
