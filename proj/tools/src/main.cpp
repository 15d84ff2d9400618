// dispersmooth: run one experiment and write its CSV, checkpoint and manifest.
//
// Exit codes: 0 success, 2 configuration error, 3 numerical abort, 4 I/O error.

#include <chrono>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "dispersmooth/config.hpp"
#include "dispersmooth/error.hpp"
#include "dispersmooth/experiments.hpp"
#include "dispersmooth/io.hpp"

namespace ds = dispersmooth;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

struct Options {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  bool quiet = false;
};

int run(ds::Experiment experiment, const Options& opt) {
  ds::RunConfig config;
  config.experiment = experiment;
  if (!opt.config_path.empty()) {
    config = ds::load_config(opt.config_path, experiment);
    if (config.experiment != experiment) {
      throw ds::ConfigError(std::string("run.experiment: config is for '") +
                            ds::experiment_name(config.experiment) + "', not '" +
                            ds::experiment_name(experiment) + "'");
    }
  }
  if (opt.seed) config.seed = *opt.seed;
  if (!opt.out_dir.empty()) config.out_dir = opt.out_dir;
  ds::validate(config);

  const auto start = std::chrono::steady_clock::now();
  const ds::ExperimentReport report = ds::run_experiment(config);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const auto files = ds::write_outputs(report, config, wall);

  if (!opt.quiet) {
    std::cout << ds::experiment_name(experiment) << " seed=" << config.seed << " ("
              << ds::format_double(wall) << " s)\n";
    for (const auto& [key, value] : report.summary) {
      std::cout << "  " << key << " = " << ds::format_double(value) << "\n";
    }
    for (const auto& w : report.warnings) std::cout << "  warning: " << w << "\n";
    for (const auto& f : files) std::cout << "  wrote " << f << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudo-spectral experiments for KGS and Zakharov systems"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(ds::code_version()));

  Options opt;
  std::optional<ds::Experiment> chosen;
  for (int i = 0; i < 7; ++i) {
    const auto e = static_cast<ds::Experiment>(i);
    CLI::App* sub = app.add_subcommand(ds::experiment_name(e));
    sub->add_option("--config", opt.config_path, "key = value config file")
        ->check(CLI::ExistingFile);
    sub->add_option("--seed", opt.seed, "override run.seed");
    sub->add_option("--out", opt.out_dir, "override run.out");
    sub->add_flag("--quiet", opt.quiet, "print nothing on success");
    sub->callback([&chosen, e] { chosen = e; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    return run(*chosen, opt);
  } catch (const ds::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ds::ShapeError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ds::NumericalAbort& e) {
    std::cerr << "numerical abort: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const ds::IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  }
}
