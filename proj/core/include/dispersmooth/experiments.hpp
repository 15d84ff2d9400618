#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dispersmooth/config.hpp"
#include "dispersmooth/evolution.hpp"
#include "dispersmooth/highlow.hpp"
#include "dispersmooth/io.hpp"

namespace dispersmooth {

/// Everything an experiment produces; no files are touched.
struct ExperimentReport {
  Experiment experiment = Experiment::simulate;
  /// File name (relative to the output directory) and contents.
  std::vector<std::pair<std::string, CsvTable>> tables;
  /// Scalar results echoed into the manifest, in insertion order.
  std::vector<std::pair<std::string, double>> summary;
  std::vector<std::string> warnings;
  std::vector<std::uint64_t> seeds;
  /// Written as final.zkgs when the config asks for checkpoints.
  std::optional<SystemState> final_state;
};

/// Runs the configured experiment. Throws ConfigError, NumericalAbort or
/// ResourceError; a pure function of the config.
ExperimentReport run_experiment(const RunConfig& config);

/// Column names of the simulate time series.
std::vector<std::string> timeseries_header();

/// HighLowConfig built from the [highlow], [regularity] and [integrator] keys.
HighLowConfig highlow_config(const RunConfig& config);

/// Writes the CSV tables, the optional checkpoint and manifest.json into
/// config.out_dir. Only the manifest carries the wall time. Returns the paths
/// written. Throws IoError naming the path on failure.
std::vector<std::string> write_outputs(const ExperimentReport& report, const RunConfig& config,
                                       double wall_seconds);

}  // namespace dispersmooth
