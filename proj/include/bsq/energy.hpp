#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bsq/operators.hpp"

namespace bsq {

struct EnergyRecord {
  double t = 0.0;
  std::optional<double> E_s, calE_s;
  std::optional<double> E_fast, E_tilde2, calE_fast, E_monitor;
  // squared norms making up calE_fast
  std::optional<double> V_X2e3, Vt_X1e2, Vtt_X0e1, eta_X2e2, etat_X1e1, etatt_L2;
  std::optional<double> V_L2, eta_L2;
  std::optional<double> calE0;

  // the functional the growth factor is measured on: calE_fast in the fast regime, E_s otherwise
  double monitored() const;
};

// CSV schema v1 column order
const std::vector<std::string>& energy_csv_columns();
std::vector<std::optional<double>> energy_csv_values(const EnergyRecord& r);

struct SlowEnergy {
  double E_s = 0.0;
  double calE_s = 0.0;
};

SlowEnergy energy_slow(const State& s, const OperatorContext& ctx, double sobolev_s);
SlowEnergy energy_slow(const State& s, const Bathymetry& b, const CoefficientSet& c, double epsilon,
                       double sobolev_s);

EnergyRecord energy_fast(const State& s, const TimeDerivatives& d, const OperatorContext& ctx);

// ||V0||^2_{X^2_{eps^3}} + ||eta0||^2_{X^2_{eps^2}}
double initial_data_norm(const VectorField& V0, const ScalarField& eta0, double epsilon);

// Regime functionals of a state (runs the cascade in the fast regime).
EnergyRecord evaluate_energy(const Model& m, const State& s, double sobolev_s);

EnergyRecord initial_energy(const VectorField& V0, const ScalarField& eta0, const Bathymetry& b,
                            const CoefficientSet& c, double epsilon, RegimeTag regime, double sobolev_s = 2.0,
                            RhsOptions opt = {});

}  // namespace bsq
