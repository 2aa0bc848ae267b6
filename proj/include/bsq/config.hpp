#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bsq/bathymetry.hpp"
#include "bsq/operators.hpp"
#include "bsq/params.hpp"

namespace bsq {

struct GridSpec {
  int dim = 1;
  int nx = 256;
  double lx = 2.0 * 3.14159265358979323846;
  int ny = 1;
  double ly = 1.0;
};

enum class InitialProfile { Zero, Gaussian, SingleMode, Random };
std::string to_string(InitialProfile p);
InitialProfile initial_profile_from_string(const std::string& s);

struct InitialDataSpec {
  InitialProfile profile = InitialProfile::Gaussian;
  double amplitude = 1.0;
  double width = 0.5;      // gaussian: in units of the domain length / (2 pi)
  double center = 0.5;     // gaussian: fraction of the domain
  int mode = 1;            // single mode
  double s = 2.0;          // random: spectral decay
  std::uint64_t seed = 1;  // random
  // if set, V0 and eta0 are rescaled so that calE0 equals this value
  std::optional<double> calE0;
};

struct RunConfig {
  RegimeTag regime = RegimeTag::Fast1d;
  std::optional<BbmParams> bbm;
  std::optional<CoefficientSet> coefficients;
  double epsilon = 0.1;
  GridSpec grid;
  BathymetrySpec bathymetry;
  InitialDataSpec initial;
  double s = 2.0;
  double T_end_factor = 1.0;
  double safety = 0.5;
  double dt_max = 0.01;  // accuracy cap on top of the stability bound
  std::string out = "out";
  int stride = 10;
  std::uint64_t seed = 0;
  bool nonlinear = true;
  std::vector<double> epsilons;

  CoefficientSet coefficient_set() const;
  double t_end() const { return T_end_factor / epsilon; }
};

// Throws ConfigInvalid with the offending key.
RunConfig config_from_json(const nlohmann::json& j);
RunConfig load_config(const std::string& path);
nlohmann::json to_json(const RunConfig& c);
void validate_config(const RunConfig& c);

GridPtr make_grid(const GridSpec& g);

// V0, eta0 for the profile (before optional calE0 normalization)
State make_initial_state(const GridPtr& g, const InitialDataSpec& spec);
// applies the calE0 normalization when requested
State prepare_initial_state(const GridPtr& g, const InitialDataSpec& spec, double epsilon);

nlohmann::json to_json(const BbmParams& p);
nlohmann::json to_json(const CoefficientSet& c);

}  // namespace bsq
