#include "bsq/timestepper.hpp"

#include <cmath>

#include "bsq/errors.hpp"

namespace bsq {

double stable_dt(const Grid& g, const CoefficientSet& c, double epsilon, double max_h, double safety) {
  if (!(safety > 0.0 && safety <= 1.0)) throw Error(ErrorCode::ConfigInvalid, "dt safety must lie in (0,1]");
  double lam = 0.0;
  const auto& xi2 = g.xi2();
  for (double k2 : xi2) lam = std::max(lam, dispersion_modulus(c, epsilon, std::sqrt(k2), max_h));
  if (!std::isfinite(lam) || lam == 0.0)
    throw Error(ErrorCode::ConfigInvalid, "no finite step-size bound: linear symbol is singular on the grid");
  return safety * kRk4ImagAxisLimit / lam;
}

double stable_dt(const Model& m, double safety) {
  const auto& ctx = m.context();
  return stable_dt(*ctx.grid, ctx.c, ctx.epsilon, ctx.max_h, safety);
}

namespace {

State add(const State& s, double a, const Rhs& k) {
  State out = s;
  out.V.axpy(a, k.dV);
  out.eta.axpy(a, k.deta);
  return out;
}

}  // namespace

State step_rk4(const Model& m, const State& s, double dt) {
  const Rhs k1 = m.rhs(s);
  const Rhs k2 = m.rhs(add(s, 0.5 * dt, k1));
  const Rhs k3 = m.rhs(add(s, 0.5 * dt, k2));
  const Rhs k4 = m.rhs(add(s, dt, k3));
  State out = s;
  const double w1 = dt / 6.0, w2 = dt / 3.0;
  out.V.axpy(w1, k1.dV);
  out.V.axpy(w2, k2.dV);
  out.V.axpy(w2, k3.dV);
  out.V.axpy(w1, k4.dV);
  out.eta.axpy(w1, k1.deta);
  out.eta.axpy(w2, k2.deta);
  out.eta.axpy(w2, k3.deta);
  out.eta.axpy(w1, k4.deta);
  out.t = s.t + dt;
  if (!all_finite(out.V) || !all_finite(out.eta))
    throw Error(ErrorCode::NonFinite, "state left the finite range at t=" + std::to_string(out.t));
  return out;
}

State step_rk4(const State& s, const Bathymetry& b, const CoefficientSet& c, double epsilon, RegimeTag regime,
               double dt, RhsOptions opt) {
  return step_rk4(Model(b, c, epsilon, regime, opt), s, dt);
}

}  // namespace bsq
