// twophase: run a Two-Phase bandit experiment from a config file and write
// results.csv, per-policy curve files and report.json.
//
// Precedence: command-line flags > config file > built-in defaults. The
// TPB_JOBS environment variable supplies the default for --jobs.
//
// Exit codes: 0 success, 1 usage or config error, 2 bound violation,
// 3 internal error.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "tpb/config.hpp"
#include "tpb/experiment.hpp"
#include "tpb/link.hpp"
#include "tpb/report_io.hpp"
#include "tpb/theory.hpp"

namespace {

enum Exit { kOk = 0, kUsage = 1, kViolation = 2, kInternal = 3 };

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw tpb::ConfigError({"cannot read config file '" + path + "'"});
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

unsigned default_jobs() {
  if (const char* env = std::getenv("TPB_JOBS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
    std::cerr << "warning: ignoring invalid TPB_JOBS='" << env << "'\n";
  }
  return 1;
}

void print_problem(const tpb::Problem& p, std::ostream& out) {
  out << "mode: " << tpb::to_string(p.mode) << ", n = " << p.dimension();
  if (p.finite) out << ", m = " << p.finite->arm_count();
  out << ", schedule: " << p.schedule.describe() << '\n';
  if (p.finite) {
    const auto& inst = *p.finite;
    out << "alpha*:";
    for (Eigen::Index u = 0; u < inst.true_means().size(); ++u) out << ' ' << inst.true_means()[u];
    out << "\nV:";
    for (auto v : inst.best_set()) out << ' ' << v;
    out << "  (w_V alpha*_V = " << inst.best_value() << ")\nprobe arms:";
    for (auto i : p.probe->indices) out << ' ' << i;
    out << '\n';
  } else {
    out << "||z*|| = " << p.sphere->preference_norm() << ", f(||z*||) = " << p.sphere->best_value() << '\n';
  }
}

void print_constants(const tpb::ExperimentReport& r, std::ostream& out) {
  if (r.constants) {
    const auto& c = *r.constants;
    out << "delta = " << c.delta << (c.delta_exact ? "" : " (certified lower bound)") << ", gamma = " << c.gamma
        << ", k1 = " << c.k1 << ", L' = " << c.L_prime << ", k2 = " << c.k2 << '\n';
  } else if (r.sphere_constants) {
    out << "k1 = " << r.sphere_constants->k1 << ", k3 = " << r.sphere_constants->k3 << '\n';
  } else {
    out << "bounds: " << r.bound_status << '\n';
  }
}

void print_summary(const tpb::ExperimentReport& r, std::ostream& out) {
  char line[160];
  std::snprintf(line, sizeof line, "%-10s %12s %14s %12s %14s\n", "policy", "t", "mean_regret", "stderr", "bound");
  out << line;
  for (const auto& c : r.curves) {
    for (const auto& p : c.points) {
      std::snprintf(line, sizeof line, "%-10s %12llu %14.4f %12.4f %14s%s\n", c.policy.c_str(),
                    static_cast<unsigned long long>(p.t), p.mean, p.stderr_,
                    p.bound ? tpb::format_double(*p.bound).c_str() : "-", p.violation ? "  VIOLATION" : "");
      out << line;
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-Phase Algorithm experiments for logistic linear bandits"};
  std::string config_path;
  std::string out_dir = "results";
  std::optional<std::uint64_t> trials;
  std::optional<std::uint64_t> seed;
  unsigned jobs = default_jobs();
  bool verbose = false;
  bool dry_run = false;

  app.add_option("--config", config_path, "experiment config file")->required();
  app.add_option("--out", out_dir, "output directory")->capture_default_str();
  app.add_option("--trials", trials, "override trials")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "override base seed");
  app.add_option("--jobs", jobs, "worker threads (default: TPB_JOBS or 1)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_flag("--verbose", verbose, "print derived quantities and progress");
  app.add_flag("--dry-run", dry_run, "validate, print derived quantities and constants, do not simulate");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    tpb::ExperimentConfig config = tpb::parse_config(read_file(config_path));
    if (trials) config.trials = *trials;
    if (seed) config.base_seed = *seed;
    tpb::validate_config(config);

    const tpb::Problem problem = tpb::resolve_problem(config);
    if (verbose || dry_run) print_problem(problem, std::cout);

    if (dry_run) {
      tpb::ExperimentConfig probe_only = config;
      probe_only.trials = 1;
      probe_only.horizon = 1;
      probe_only.checkpoints = {1};
      probe_only.baselines.clear();
      print_constants(tpb::run_experiment(probe_only), std::cout);
      return kOk;
    }

    tpb::RunOptions opts;
    opts.jobs = jobs;
    if (verbose) {
      opts.progress = [](std::uint64_t done, std::uint64_t total) {
        if (done == total || done % std::max<std::uint64_t>(1, total / 20) == 0)
          std::cerr << "\rtrials " << done << "/" << total << (done == total ? "\n" : "") << std::flush;
      };
    }
    const tpb::ExperimentReport report = tpb::run_experiment(config, opts);

    const std::filesystem::path out(out_dir);
    std::filesystem::create_directories(out);
    tpb::emit_csv(report, out / "results.csv");
    tpb::emit_curves(report, out);
    tpb::emit_report_json(report, out / "report.json");

    if (verbose) print_constants(report, std::cout);
    print_summary(report, std::cout);
    if (report.has_violation()) {
      std::cerr << "error: empirical mean regret exceeds the theoretical bound\n";
      return kViolation;
    }
    return kOk;
  } catch (const tpb::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const tpb::TheoryError& e) {
    std::cerr << "error: " << e.what() << "\n(set 'bounds = optional' or 'bounds = off' to simulate anyway)\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
}
