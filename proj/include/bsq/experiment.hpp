#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bsq/config.hpp"
#include "bsq/energy.hpp"

namespace bsq {

enum ExitCode : int { kExitOk = 0, kExitConfig = 1, kExitBlowup = 2 };

struct RunResult {
  int exit_code = kExitOk;
  std::string message;
  double epsilon = 0.0;
  double dt = 0.0;
  long steps = 0;
  double t_end = 0.0;
  std::optional<double> blowup_time;
  double calE0 = 0.0;
  double monitored0 = 0.0;
  double monitored_max = 0.0;
  std::optional<double> G;  // max_t monitored(t) / monitored(0); absent for zero data
  std::vector<EnergyRecord> records;
};

struct RunOptions {
  bool write_outputs = true;
  bool keep_records = true;
};

// Validates the configuration (regime, bathymetry hypotheses) and integrates to T_end.
// ConfigInvalid propagates; NonFinite is caught and reported with exit code 2.
RunResult run_experiment(const RunConfig& cfg, RunOptions opt = {});

// Builds the validated problem without integrating (shared by run and verify paths).
struct Problem {
  GridPtr grid;
  CoefficientSet coeffs;
  std::optional<Bathymetry> bathy;
  State initial;
};
Problem build_problem(const RunConfig& cfg);

struct SweepResult {
  std::vector<RunResult> runs;
  double flatness = 0.0;  // max G / min G over the completed runs
  bool all_ok = false;
};

// Runs every epsilon concurrently; per-run failures are recorded and the sweep continues.
SweepResult sweep_epsilon(const RunConfig& cfg, const std::vector<double>& epsilons, RunOptions opt = {});

nlohmann::json run_metadata(const RunConfig& cfg, const RunResult& r);

}  // namespace bsq
