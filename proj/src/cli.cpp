// Copyright 2026 The iosim Authors
// SPDX-License-Identifier: Apache-2.0

#include "iosim/cli.hpp"

#include <omp.h>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <optional>

#include "CLI11.hpp"
#include "iosim/config.hpp"
#include "iosim/csv.hpp"
#include "iosim/experiments.hpp"
#include "iosim/validation.hpp"

namespace iosim {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Point3 parse_point(const std::string& text) {
  double v[3];
  const char* p = text.data();
  const char* end = p + text.size();
  for (int i = 0; i < 3; ++i) {
    const auto res = std::from_chars(p, end, v[i]);
    if (res.ec != std::errc{} || !std::isfinite(v[i])) {
      throw UsageError("--mu expects x,y,z, got '" + text + "'");
    }
    p = res.ptr;
    if (i < 2) {
      if (p == end || *p != ',') throw UsageError("--mu expects x,y,z, got '" + text + "'");
      ++p;
    }
  }
  if (p != end) throw UsageError("--mu expects x,y,z, got '" + text + "'");
  return {v[0], v[1], v[2]};
}

// Writes through `emit` to --out when given, otherwise to stdout.
template <class Emit>
void write_output(const std::string& path, std::ostream& out, Emit emit) {
  if (path.empty()) {
    emit(out);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ConfigError(0, "", "cannot open " + path + " for writing");
  emit(file);
  file.flush();
  if (!file) throw ConfigError(0, "", "failed writing " + path);
}

struct Common {
  std::string config_path;
  std::string out_path;
  bool dump = false;
  int threads = 0;

  ScenarioConfig load() const {
    return config_path.empty() ? ScenarioConfig{} : load_config(config_path);
  }
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--config", c.config_path, "Scenario file (defaults when omitted)")
      ->check(CLI::ExistingFile);
  cmd->add_option("--out", c.out_path, "Output CSV path (stdout when omitted)");
  cmd->add_flag("--dump-config", c.dump, "Print the effective configuration and exit");
}

void add_threads(CLI::App* cmd, Common& c) {
  cmd->add_option("--threads", c.threads, "OpenMP threads (0 = runtime default)")
      ->check(CLI::NonNegativeNumber);
}

void apply_threads(const Common& c) {
  if (c.threads > 0) omp_set_num_threads(c.threads);
}

// Revalidates after command-line overrides.
void revalidate(const ScenarioConfig& config) {
  try {
    validate(config);
  } catch (const std::invalid_argument& e) {
    const std::string msg = e.what();
    throw ConfigError(0, msg.substr(0, msg.find(' ')), msg);
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Omni-surface downlink simulator and phase-shift optimizer", "iosim"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  Common opt_c;
  std::string mu_text;
  std::string mode_text;
  std::string bound_text;
  std::string init_text;
  std::string solver = "bnb";
  std::optional<std::uint64_t> opt_seed;
  CLI::App* optimize = app.add_subcommand("optimize", "Design phases for one user position");
  add_common(optimize, opt_c);
  optimize->add_option("--mu", mu_text, "User position x,y,z in meters");
  optimize->add_option("--mode", mode_text, "Candidate set")
      ->check(CLI::IsMember({"bracketing", "full"}));
  optimize->add_option("--bound", bound_text, "Branch-and-bound node bound")
      ->check(CLI::IsMember({"relaxed", "rotation"}));
  optimize->add_option("--init", init_text, "Incumbent initialization")
      ->check(CLI::IsMember({"nearest", "random"}));
  optimize->add_option("--solver", solver, "Discrete solver")
      ->check(CLI::IsMember({"bnb", "brute-force", "rotation-sweep", "nearest"}));
  optimize->add_option("--seed", opt_seed, "Seed for --init random");

  Common map_c;
  bool map_serial = false;
  CLI::App* heatmap_cmd = app.add_subcommand("heatmap", "Coverage grid for every system");
  add_common(heatmap_cmd, map_c);
  add_threads(heatmap_cmd, map_c);
  heatmap_cmd->add_flag("--serial", map_serial, "Use the single-threaded reference kernel");

  Common sweep_c;
  bool sweep_serial = false;
  std::optional<std::uint64_t> sweep_seed;
  std::optional<std::size_t> sweep_trials;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Average SE against panel size");
  add_common(sweep_cmd, sweep_c);
  add_threads(sweep_cmd, sweep_c);
  sweep_cmd->add_option("--seed", sweep_seed, "Override experiment.master_seed");
  sweep_cmd->add_option("--trials", sweep_trials, "Override experiment.n_trials")
      ->check(CLI::PositiveNumber);
  sweep_cmd->add_flag("--serial", sweep_serial, "Use the single-threaded reference kernel");

  bool quick = false;
  std::uint64_t validate_seed = 1;
  std::string validate_out;
  CLI::App* validate_cmd = app.add_subcommand("validate", "Run the oracle and invariant suite");
  validate_cmd->add_flag("--quick", quick, "Elements <= 8 and fewer instances");
  validate_cmd->add_option("--seed", validate_seed, "Seed for the random instances");
  validate_cmd->add_option("--out", validate_out, "Report CSV path (stdout when omitted)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "iosim: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (optimize->parsed()) {
      ScenarioConfig config = opt_c.load();
      if (!mode_text.empty()) config.experiment.candidate_set = parse_candidate_mode(mode_text);
      if (!bound_text.empty()) config.experiment.bound = parse_bound_kind(bound_text);
      if (!init_text.empty()) config.experiment.init = parse_init_mode(init_text);
      if (opt_seed) config.experiment.master_seed = *opt_seed;
      if (opt_c.dump) {
        out << dump_config(config);
        return kExitOk;
      }
      if (mu_text.empty()) throw UsageError("optimize requires --mu x,y,z");
      const Point3 mu = parse_point(mu_text);
      const LinkBudget link = build_link(config.panel, config.bs, mu, config.rf, SurfaceKind::ios);
      const CandidateMode mode = config.experiment.candidate_set;
      OptimizationResult result;
      if (solver == "bnb") {
        result = branch_and_bound(link, config.optimizer_options());
      } else if (solver == "brute-force") {
        result = brute_force(link, mode);
      } else if (solver == "rotation-sweep") {
        result = rotation_sweep(link, mode);
      } else {
        result = nearest_quantized(link);
      }
      const double se_expected =
          spectral_efficiency(expected_power(link, result.phases), link.tx_power, link.noise_power);
      write_output(opt_c.out_path, out,
                   [&](std::ostream& s) { write_optimize_csv(s, result, se_expected); });
      return kExitOk;
    }

    if (heatmap_cmd->parsed()) {
      const ScenarioConfig config = map_c.load();
      if (map_c.dump) {
        out << dump_config(config);
        return kExitOk;
      }
      apply_threads(map_c);
      const Heatmap map = map_serial ? heatmap_serial(config) : heatmap(config);
      write_output(map_c.out_path, out, [&](std::ostream& s) { write_heatmap_csv(s, map); });
      return kExitOk;
    }

    if (sweep_cmd->parsed()) {
      ScenarioConfig config = sweep_c.load();
      if (sweep_seed) config.experiment.master_seed = *sweep_seed;
      if (sweep_trials) config.experiment.n_trials = *sweep_trials;
      revalidate(config);
      if (sweep_c.dump) {
        out << dump_config(config);
        return kExitOk;
      }
      apply_threads(sweep_c);
      const ExperimentParams& e = config.experiment;
      const std::vector<SweepPoint> points =
          sweep_serial ? size_sweep_serial(config, e.sizes, e.n_trials, e.master_seed)
                       : size_sweep(config, e.sizes, e.n_trials, e.master_seed);
      write_output(sweep_c.out_path, out, [&](std::ostream& s) { write_sweep_csv(s, points); });
      return kExitOk;
    }

    const ValidationReport report = run_validation(quick, validate_seed);
    write_output(validate_out, out, [&](std::ostream& s) { write_validation_csv(s, report); });
    if (!report.passed()) {
      err << "iosim: validation failed\n";
      return kExitValidation;
    }
    return kExitOk;
  } catch (const UsageError& e) {
    err << "iosim: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "iosim: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    err << "iosim: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::domain_error& e) {
    err << "iosim: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::length_error& e) {
    err << "iosim: " << e.what() << '\n';
    return kExitConfig;
  }
}

}  // namespace iosim
