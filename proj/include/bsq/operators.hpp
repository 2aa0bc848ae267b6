#pragma once

#include <utility>

#include "bsq/bathymetry.hpp"
#include "bsq/field.hpp"
#include "bsq/params.hpp"

namespace bsq {

struct State {
  VectorField V;
  ScalarField eta;
  double t = 0.0;

  static State zero(const GridPtr& g) { return State{VectorField(g), ScalarField(g), 0.0}; }
};

struct TimeDerivatives {
  VectorField V_t, V_tt;
  ScalarField eta_t, eta_tt;
};

// Depth-dependent coefficient fields shared by every operator evaluation.
struct OperatorContext {
  GridPtr grid;
  CoefficientSet c;
  double epsilon = 0.1;
  double h0 = 0.5;
  ScalarField h, sqrt_h, inv_sqrt_h, inv_h, h2, h32, h52;
  VectorField grad_h, h_grad_h, sqrt_h_grad_h;
  // 1D only
  ScalarField hx, hxx, h32hx, hx_over_h32, r1, r2, r;
  double mean_h2 = 1.0;
  double max_h = 1.0;

  OperatorContext(const Bathymetry& b, const CoefficientSet& coeffs, double eps);
};

VectorField apply_P1(const OperatorContext& ctx, const VectorField& V);
ScalarField apply_P2(const OperatorContext& ctx, const ScalarField& eta);
VectorField apply_P1(const Bathymetry& b, const CoefficientSet& c, const VectorField& V);
ScalarField apply_P2(const Bathymetry& b, const CoefficientSet& c, const ScalarField& eta);

// (1 - eps/2 P) applied forward
VectorField apply_mass1(const OperatorContext& ctx, const VectorField& V);
ScalarField apply_mass2(const OperatorContext& ctx, const ScalarField& eta);

// 1D dispersive operators of the reduced system. With `checked` the coefficient
// set must satisfy b1=c1 and b2+b3+c2+c3=0 (RegimeMismatch otherwise).
ScalarField apply_Bh(const OperatorContext& ctx, const ScalarField& f, bool checked = true);
ScalarField apply_Ch(const OperatorContext& ctx, const ScalarField& g, bool checked = true);
ScalarField apply_Bh(const Bathymetry& b, const CoefficientSet& c, const ScalarField& f);
ScalarField apply_Ch(const Bathymetry& b, const CoefficientSet& c, const ScalarField& g);

ScalarField r_coefficient(const Bathymetry& b, const CoefficientSet& c);
ScalarField r1_coefficient(const Bathymetry& b, const CoefficientSet& c);
ScalarField r2_coefficient(const Bathymetry& b, const CoefficientSet& c);

// dispersive brackets of the general system, any dimension
VectorField dispersive_momentum(const OperatorContext& ctx, const ScalarField& eta);
ScalarField dispersive_mass(const OperatorContext& ctx, const VectorField& V);

enum class NonlinearForm { General, Reduced1d };

struct Nonlinear {
  VectorField F;
  ScalarField f;
};

// Symmetric bilinear form N(U,W); the nonlinear terms are N(U,U)/2 and their
// time derivative along U_t is N(U,U_t).
Nonlinear nonlinear_pair(const OperatorContext& ctx, const State& U, const State& W, NonlinearForm form);
Nonlinear compute_Fh_fh(const OperatorContext& ctx, const State& U, NonlinearForm form = NonlinearForm::General);
Nonlinear compute_Fh_fh(const State& U, const Bathymetry& b, NonlinearForm form = NonlinearForm::General);

struct RhsOptions {
  bool nonlinear = true;
};

struct Rhs {
  VectorField dV;
  ScalarField deta;
};

// Right-hand side evaluator for one (bathymetry, coefficients, epsilon, regime).
class Model {
 public:
  Model(const Bathymetry& b, const CoefficientSet& c, double epsilon, RegimeTag regime, RhsOptions opt = {});

  Rhs rhs(const State& s) const;
  TimeDerivatives cascade(const State& s) const;

  const OperatorContext& context() const { return ctx_; }
  RegimeTag regime() const { return regime_; }
  bool fast() const { return regime_ == RegimeTag::Fast1d; }
  const RhsOptions& options() const { return opt_; }

 private:
  // linear brackets: momentum acts on eta, mass on V
  VectorField linear_momentum(const ScalarField& eta) const;
  ScalarField linear_mass(const VectorField& V) const;
  Rhs solve(VectorField momentum, ScalarField mass) const;
  bool has_mass2() const;

  OperatorContext ctx_;
  RegimeTag regime_;
  RhsOptions opt_;
  NonlinearForm form_;
};

Rhs assemble_rhs(const State& s, const Bathymetry& b, const CoefficientSet& c, double epsilon, RegimeTag regime,
                 RhsOptions opt = {});
TimeDerivatives time_derivative_cascade(const State& s, const Bathymetry& b, const CoefficientSet& c,
                                        double epsilon, RegimeTag regime, RhsOptions opt = {});

}  // namespace bsq
