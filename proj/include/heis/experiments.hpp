#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "heis/io.hpp"

namespace heis {

/// One checked claim of an experiment. Diagnostic criteria are reported but never fail a run.
struct Criterion {
  std::string id;
  std::string description;
  bool pass = false;
  bool gate = true;
  io::json detail;
};

struct ExperimentReport {
  std::string name;
  std::vector<Criterion> criteria;
  /// Data files written, relative to the output directory, in write order.
  std::vector<std::string> files;

  bool pass() const;
  io::json verdict() const;
  std::string summary() const;
  const Criterion& criterion(const std::string& id) const;
};

/// theorem-b, schottky-stability, vertical-line, entropy-averages.
const std::vector<std::string>& experiment_names();
/// Default config file name for an experiment (theorem-b -> theorem_b.json).
std::string default_config_file(const std::string& name);

/// Allowed top-level keys of an experiment config. Throws for unknown experiments.
const std::vector<std::string>& config_keys(const std::string& name);
/// Throws std::invalid_argument on a missing experiment name or an unknown key.
void validate_config(const io::json& config);

/// Validates `config` against the schema of config["experiment"] (unknown keys are errors), runs
/// the pipeline and writes data files plus verdict.json and summary.txt into `out_dir`.
ExperimentReport run_experiment(const io::json& config, const std::filesystem::path& out_dir,
                                std::optional<std::uint64_t> seed_override = std::nullopt);

/// Basepoint list: explicit entries, then `random` Gaussian points of the given scale, then
/// `near_set` points within `offset` of a reference cloud. Random points avoid the centre Z
/// when `off_centre` is set.
struct BasepointPlan {
  std::vector<std::optional<HeisPoint>> explicit_points;
  std::size_t random = 0;
  std::size_t near_set = 0;
  double scale = 2.0;
  double offset = 0.05;
  bool off_centre = false;
};

BasepointPlan basepoint_plan_from(const io::json& j, int d);
std::vector<std::optional<HeisPoint>> resolve_basepoints(const BasepointPlan& plan, int d,
                                                         const std::vector<HeisPoint>& reference,
                                                         std::uint64_t seed);

}  // namespace heis
