#pragma once

#include "bsq/operators.hpp"

namespace bsq {

inline constexpr double kRk4ImagAxisLimit = 2.8;
inline constexpr double kDefaultSafety = 0.5;

// safety * 2.8 / max |lambda+(xi)| over grid wavenumbers, flat bottom of depth max_h
double stable_dt(const Grid& g, const CoefficientSet& c, double epsilon, double max_h, double safety = kDefaultSafety);
double stable_dt(const Model& m, double safety = kDefaultSafety);

// classical four-stage Runge-Kutta; throws NonFinite if the new state is not finite
State step_rk4(const Model& m, const State& s, double dt);

State step_rk4(const State& s, const Bathymetry& b, const CoefficientSet& c, double epsilon, RegimeTag regime,
               double dt, RhsOptions opt = {});

}  // namespace bsq
