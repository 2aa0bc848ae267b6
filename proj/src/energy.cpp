#include "bsq/energy.hpp"

#include "bsq/errors.hpp"

namespace bsq {

double EnergyRecord::monitored() const {
  if (calE_fast) return *calE_fast;
  if (E_s) return *E_s;
  return 0.0;
}

const std::vector<std::string>& energy_csv_columns() {
  static const std::vector<std::string> cols = {
      "t",        "E_s",       "calE_s",    "E_fast",    "E_tilde2",  "calE_fast", "E_monitor", "V_X2e3",
      "Vt_X1e2",  "Vtt_X0e1",  "eta_X2e2",  "etat_X1e1", "etatt_L2",  "V_L2",      "eta_L2",    "calE0"};
  return cols;
}

std::vector<std::optional<double>> energy_csv_values(const EnergyRecord& r) {
  return {r.t,        r.E_s,       r.calE_s,    r.E_fast,    r.E_tilde2,  r.calE_fast, r.E_monitor, r.V_X2e3,
          r.Vt_X1e2,  r.Vtt_X0e1,  r.eta_X2e2,  r.etat_X1e1, r.etatt_L2,  r.V_L2,      r.eta_L2,    r.calE0};
}

SlowEnergy energy_slow(const State& s, const OperatorContext& ctx, double sobolev_s) {
  SlowEnergy e;
  const double eps = ctx.epsilon;
  e.E_s = hs_inner(apply_mass1(ctx, s.V), s.V, sobolev_s) + hs_inner(apply_mass2(ctx, s.eta), s.eta, sobolev_s);
  e.calE_s = x_norm_sq(s.V, NormSpec{sobolev_s, 1, eps, true}) + x_norm_sq(s.eta, NormSpec{sobolev_s, 1, eps, false});
  return e;
}

SlowEnergy energy_slow(const State& s, const Bathymetry& b, const CoefficientSet& c, double epsilon,
                       double sobolev_s) {
  return energy_slow(s, OperatorContext(b, c, epsilon), sobolev_s);
}

EnergyRecord energy_fast(const State& s, const TimeDerivatives& d, const OperatorContext& ctx) {
  if (ctx.grid->dim() != 1) throw Error(ErrorCode::RegimeMismatch, "fast-regime energies are one-dimensional");
  const double eps = ctx.epsilon;
  EnergyRecord r;
  r.t = s.t;

  double E = 0.0;
  const VectorField* Vk[3] = {&s.V, &d.V_t, &d.V_tt};
  const ScalarField* ek[3] = {&s.eta, &d.eta_t, &d.eta_tt};
  for (int k = 0; k < 3; ++k) {
    E += l2_inner(apply_mass1(ctx, *Vk[k]), *Vk[k]);
    E += l2_inner(apply_mass2(ctx, *ek[k]), *ek[k]);
  }

  const ScalarField v1 = dx(d.V_t[0]);
  const ScalarField v2 = derivative(d.V_t[0], 0, 2);
  double e21 = 0.0, e22 = 0.0;
  for (std::size_t i = 0; i < v1.size(); ++i) {
    e21 += ctx.r[i] * ctx.sqrt_h[i] * v1[i] * v1[i];
    e22 += ctx.r[i] * ctx.h52[i] * v2[i] * v2[i];
  }
  const double dxv = ctx.grid->cell_volume();
  e21 *= dxv;
  e22 *= -0.5 * eps * ctx.c.b1 * dxv;

  r.V_X2e3 = x_norm_sq(s.V[0], 2, 3, eps);
  r.Vt_X1e2 = x_norm_sq(d.V_t[0], 1, 2, eps);
  r.Vtt_X0e1 = x_norm_sq(d.V_tt[0], 0, 1, eps);
  r.eta_X2e2 = x_norm_sq(s.eta, 2, 2, eps);
  r.etat_X1e1 = x_norm_sq(d.eta_t, 1, 1, eps);
  r.etatt_L2 = l2_inner(d.eta_tt, d.eta_tt);
  r.calE_fast = *r.V_X2e3 + *r.Vt_X1e2 + *r.Vtt_X0e1 + *r.eta_X2e2 + *r.etat_X1e1 + *r.etatt_L2;
  r.E_fast = E;
  r.E_tilde2 = e21 + e22;
  r.E_monitor = E + 0.5 * eps * (e21 + e22);
  r.V_L2 = l2_inner(s.V, s.V);
  r.eta_L2 = l2_inner(s.eta, s.eta);
  return r;
}

double initial_data_norm(const VectorField& V0, const ScalarField& eta0, double epsilon) {
  const double v = V0.dim() == 1 ? x_norm_sq(V0[0], 2, 3, epsilon) : x_norm_sq(V0, NormSpec{2, 3, epsilon, true});
  return v + x_norm_sq(eta0, 2, 2, epsilon);
}

EnergyRecord evaluate_energy(const Model& m, const State& s, double sobolev_s) {
  const auto& ctx = m.context();
  EnergyRecord r;
  if (m.fast()) {
    r = energy_fast(s, m.cascade(s), ctx);
  } else {
    r.t = s.t;
    r.V_L2 = l2_inner(s.V, s.V);
    r.eta_L2 = l2_inner(s.eta, s.eta);
  }
  if (!m.fast()) {
    const SlowEnergy e = energy_slow(s, ctx, sobolev_s);
    r.E_s = e.E_s;
    r.calE_s = e.calE_s;
  }
  return r;
}

EnergyRecord initial_energy(const VectorField& V0, const ScalarField& eta0, const Bathymetry& b,
                            const CoefficientSet& c, double epsilon, RegimeTag regime, double sobolev_s,
                            RhsOptions opt) {
  const Model m(b, c, epsilon, regime, opt);
  const State s{V0, eta0, 0.0};
  EnergyRecord r = evaluate_energy(m, s, sobolev_s);
  r.calE0 = initial_data_norm(V0, eta0, epsilon);
  return r;
}

}  // namespace bsq
