// Command-line driver for Laplace-domain reduced-basis wave experiments.
//
//   ltmor run       --config desk.cfg [--out dir] [--workers n] [--seed s]
//                   [--offline-only | --online-only --basis file]
//   ltmor offline   --config desk.cfg
//   ltmor online    --config desk.cfg --basis out/basis.bin
//   ltmor reference --config desk.cfg
//   ltmor study     --config desk.cfg
//
// Exit codes: 0 ok, 1 numerical failure, 2 configuration error.

#include "ltmor/config.hpp"
#include "ltmor/experiment.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNumerical = 1;
constexpr int kExitConfig = 2;

struct CommonOptions {
  std::string config;
  std::string out;
  int workers = 0;
  std::optional<std::uint64_t> seed;
  std::string basis;
};

void add_common(CLI::App* cmd, CommonOptions& opts, bool wants_basis) {
  cmd->add_option("--config", opts.config, "Experiment configuration file")->required();
  cmd->add_option("--out", opts.out, "Output directory (overrides output.dir)");
  cmd->add_option("--workers", opts.workers, "Concurrent snapshot solves (overrides run.workers)");
  cmd->add_option("--seed", opts.seed, "Seed for randomized checks (overrides run.seed)");
  if (wants_basis) cmd->add_option("--basis", opts.basis, "Basis file written by an offline run");
}

ltmor::ExperimentConfig load_config(const CommonOptions& opts) {
  auto raw = ltmor::RawConfig::load(opts.config);
  raw.apply_env_overrides(ltmor::known_config_keys());
  if (!opts.out.empty()) raw.set("output.dir", opts.out);
  if (opts.workers > 0) raw.set("run.workers", std::to_string(opts.workers));
  if (opts.seed) raw.set("run.seed", std::to_string(*opts.seed));
  return ltmor::parse_experiment_config(raw);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Laplace-domain reduced-basis solver for the scalar wave equation"};
  app.require_subcommand(1);

  CommonOptions opts;
  bool offline_only = false;
  bool online_only = false;

  auto* run = app.add_subcommand("run", "Offline + online + reference, with error and timing reports");
  add_common(run, opts, true);
  auto* off_flag = run->add_flag("--offline-only", offline_only, "Only build and persist the basis");
  run->add_flag("--online-only", online_only, "Reuse a persisted basis (requires --basis)")
      ->excludes(off_flag);

  auto* offline = app.add_subcommand("offline", "Snapshot solves and POD basis");
  add_common(offline, opts, false);
  auto* online = app.add_subcommand("online", "Reduced time stepping from a persisted basis");
  add_common(online, opts, true);
  auto* reference = app.add_subcommand("reference", "High-fidelity time stepping");
  add_common(reference, opts, false);
  auto* study = app.add_subcommand("study", "Error and timing study over study.M x rom.R");
  add_common(study, opts, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    ltmor::ExperimentRunner runner(load_config(opts), std::cout);
    if (run->parsed()) {
      if (online_only && opts.basis.empty()) {
        throw ltmor::ConfigError("--basis", "--online-only requires --basis");
      }
      const auto mode = offline_only  ? ltmor::RunMode::offline_only
                        : online_only ? ltmor::RunMode::online_only
                                      : ltmor::RunMode::full;
      runner.run(mode, opts.basis);
    } else if (offline->parsed()) {
      runner.offline();
    } else if (online->parsed()) {
      if (opts.basis.empty()) throw ltmor::ConfigError("--basis", "online requires --basis");
      runner.online(opts.basis);
    } else if (reference->parsed()) {
      runner.reference();
    } else if (study->parsed()) {
      runner.study();
    }
  } catch (const ltmor::ConfigError& e) {
    std::cerr << "config error";
    if (!e.key().empty()) std::cerr << " [" << e.key() << "]";
    std::cerr << ": " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitOk;
}
