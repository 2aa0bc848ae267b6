#include "bsq/operators.hpp"

#include <cmath>

#include "bsq/errors.hpp"
#include "bsq/mass_solver.hpp"

namespace bsq {

namespace {

ScalarField map(const ScalarField& f, double (*fn)(double)) {
  ScalarField out(f.grid);
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = fn(f[i]);
  return out;
}

ScalarField mul(const ScalarField& a, const ScalarField& b) { return dealias_product(a, b); }

ScalarField d2x(const ScalarField& f) { return derivative(f, 0, 2); }

VectorField as_vector(ScalarField f) {
  std::vector<ScalarField> c;
  c.push_back(std::move(f));
  return VectorField(std::move(c));
}

void require_1d(const GridPtr& g, const char* what) {
  if (g->dim() != 1) throw Error(ErrorCode::RegimeMismatch, std::string(what) + " is defined in one dimension only");
}

}  // namespace

OperatorContext::OperatorContext(const Bathymetry& b, const CoefficientSet& coeffs, double eps)
    : grid(b.h.grid), c(coeffs), epsilon(eps), h0(b.h0), h(b.h) {
  if (!(b.min_h > 0.0) || b.min_h < b.h0)
    throw Error(ErrorCode::CavitationViolation, "depth falls below the cavitation floor h0");
  sqrt_h = map(h, [](double x) { return std::sqrt(x); });
  inv_sqrt_h = map(h, [](double x) { return 1.0 / std::sqrt(x); });
  inv_h = map(h, [](double x) { return 1.0 / x; });
  h2 = map(h, [](double x) { return x * x; });
  h32 = map(h, [](double x) { return x * std::sqrt(x); });
  h52 = map(h, [](double x) { return x * x * std::sqrt(x); });
  grad_h = gradient(h);
  h_grad_h = grad_h;
  sqrt_h_grad_h = grad_h;
  for (int a = 0; a < grid->dim(); ++a) {
    h_grad_h[a] = pointwise_product(h, grad_h[a]);
    sqrt_h_grad_h[a] = pointwise_product(sqrt_h, grad_h[a]);
  }
  double acc = 0.0;
  for (double x : h2.v) acc += x;
  mean_h2 = acc / static_cast<double>(h2.size());
  max_h = b.max_h;

  if (grid->dim() == 1) {
    hx = grad_h[0];
    hxx = d2x(h);
    h32hx = pointwise_product(h32, hx);
    hx_over_h32 = ScalarField(grid);
    r1 = ScalarField(grid);
    r2 = ScalarField(grid);
    r = ScalarField(grid);
    const double k1 = c.b2 + 1.5 * c.b3 + c.b4;
    const double k2 = c.c2 + 1.5 * c.c3 - c.c4;
    const double kr = 0.5 * c.b3 + 0.5 * c.c3 + c.b4 - c.c4;
    for (std::size_t i = 0; i < h.size(); ++i) {
      const double s = sqrt_h[i] * hx[i] * hx[i];
      const double t = h32[i] * hxx[i];
      hx_over_h32[i] = hx[i] / h32[i];
      r1[i] = k1 * s + c.b2 * t;
      r2[i] = k2 * s + c.c2 * t;
      r[i] = kr * s + (c.b2 + c.c2) * t;
    }
  }
}

VectorField apply_P1(const OperatorContext& ctx, const VectorField& V) {
  if (!V.grid()->same_as(*ctx.grid)) throw Error(ErrorCode::GridMismatch, "P1 operand grid differs from bathymetry");
  VectorField out(ctx.grid);
  if (ctx.c.a1 != 0.0) out.axpy(ctx.c.a1, gradient(mul(ctx.h2, divergence(V))));
  if (ctx.c.a2 != 0.0) out.axpy(ctx.c.a2, gradient(dot(ctx.h_grad_h, V)));
  return out;
}

ScalarField apply_P2(const OperatorContext& ctx, const ScalarField& eta) {
  if (!eta.grid->same_as(*ctx.grid)) throw Error(ErrorCode::GridMismatch, "P2 operand grid differs from bathymetry");
  ScalarField out(ctx.grid);
  if (ctx.c.d1 != 0.0) out.axpy(ctx.c.d1, divergence(scale_by(ctx.h2, gradient(eta))));
  if (ctx.c.d2 != 0.0) out.axpy(ctx.c.d2, divergence(scale_by(eta, ctx.h_grad_h)));
  return out;
}

VectorField apply_P1(const Bathymetry& b, const CoefficientSet& c, const VectorField& V) {
  return apply_P1(OperatorContext(b, c, 0.0), V);
}

ScalarField apply_P2(const Bathymetry& b, const CoefficientSet& c, const ScalarField& eta) {
  return apply_P2(OperatorContext(b, c, 0.0), eta);
}

VectorField apply_mass1(const OperatorContext& ctx, const VectorField& V) {
  VectorField out = V;
  out.axpy(-0.5 * ctx.epsilon, apply_P1(ctx, V));
  return out;
}

ScalarField apply_mass2(const OperatorContext& ctx, const ScalarField& eta) {
  ScalarField out = eta;
  out.axpy(-0.5 * ctx.epsilon, apply_P2(ctx, eta));
  return out;
}

namespace {

void require_fast_pair(const OperatorContext& ctx) {
  require_1d(ctx.grid, "B_h/C_h");
  const auto& c = ctx.c;
  if (std::abs(c.b1 - c.c1) > kEqualityTol || std::abs(c.b2 + c.b3 + c.c2 + c.c3) > kEqualityTol)
    throw Error(ErrorCode::RegimeMismatch, "B_h/C_h need b1=c1 and b2+b3+c2+c3=0");
}

}  // namespace

ScalarField apply_Bh(const OperatorContext& ctx, const ScalarField& f, bool checked) {
  if (checked) require_fast_pair(ctx);
  require_1d(ctx.grid, "B_h");
  const auto& c = ctx.c;
  const ScalarField fx = dx(f);
  ScalarField out = mul(ctx.r1, fx);
  if (c.b1 != 0.0) out.axpy(c.b1, mul(ctx.sqrt_h, d2x(mul(ctx.h2, fx))));
  if (c.b2 + c.b3 != 0.0) out.axpy(c.b2 + c.b3, mul(ctx.h32hx, d2x(f)));
  return out;
}

ScalarField apply_Ch(const OperatorContext& ctx, const ScalarField& g, bool checked) {
  if (checked) require_fast_pair(ctx);
  require_1d(ctx.grid, "C_h");
  const auto& c = ctx.c;
  ScalarField out = -dx(mul(ctx.r2, g));
  if (c.c1 != 0.0) out.axpy(c.c1, dx(mul(ctx.h2, d2x(mul(ctx.sqrt_h, g)))));
  if (c.c2 + c.c3 != 0.0) out.axpy(c.c2 + c.c3, d2x(mul(ctx.h32hx, g)));
  return out;
}

ScalarField apply_Bh(const Bathymetry& b, const CoefficientSet& c, const ScalarField& f) {
  return apply_Bh(OperatorContext(b, c, 0.0), f);
}

ScalarField apply_Ch(const Bathymetry& b, const CoefficientSet& c, const ScalarField& g) {
  return apply_Ch(OperatorContext(b, c, 0.0), g);
}

ScalarField r_coefficient(const Bathymetry& b, const CoefficientSet& c) {
  require_1d(b.h.grid, "r(h)");
  return OperatorContext(b, c, 0.0).r;
}

ScalarField r1_coefficient(const Bathymetry& b, const CoefficientSet& c) {
  require_1d(b.h.grid, "r1(h)");
  return OperatorContext(b, c, 0.0).r1;
}

ScalarField r2_coefficient(const Bathymetry& b, const CoefficientSet& c) {
  require_1d(b.h.grid, "r2(h)");
  return OperatorContext(b, c, 0.0).r2;
}

VectorField dispersive_momentum(const OperatorContext& ctx, const ScalarField& eta) {
  const auto& c = ctx.c;
  const VectorField G = gradient(eta);
  VectorField out(ctx.grid);
  if (c.b1 != 0.0) out.axpy(c.b1, scale_by(ctx.sqrt_h, gradient(divergence(scale_by(ctx.h2, G)))));
  if (c.b2 != 0.0) out.axpy(c.b2, scale_by(ctx.sqrt_h, gradient(dot(ctx.h_grad_h, G))));
  if (c.b3 != 0.0) {
    const ScalarField q = divergence(scale_by(ctx.h32, G));
    out.axpy(c.b3, scale_by(q, ctx.grad_h));
  }
  if (c.b4 != 0.0) out.axpy(c.b4, scale_by(dot(ctx.grad_h, G), ctx.sqrt_h_grad_h));
  return out;
}

ScalarField dispersive_mass(const OperatorContext& ctx, const VectorField& V) {
  const auto& c = ctx.c;
  VectorField w(ctx.grid);
  if (c.c1 != 0.0 || c.c2 != 0.0) {
    const ScalarField q = divergence(scale_by(ctx.sqrt_h, V));
    if (c.c1 != 0.0) w.axpy(c.c1, scale_by(ctx.h2, gradient(q)));
    if (c.c2 != 0.0) w.axpy(c.c2, scale_by(q, ctx.h_grad_h));
  }
  if (c.c3 != 0.0 || c.c4 != 0.0) {
    const ScalarField s = dot(ctx.grad_h, V);
    if (c.c3 != 0.0) w.axpy(c.c3, scale_by(ctx.h32, gradient(s)));
    if (c.c4 != 0.0) w.axpy(c.c4, scale_by(s, ctx.sqrt_h_grad_h));
  }
  return divergence(w);
}

Nonlinear nonlinear_pair(const OperatorContext& ctx, const State& U, const State& W, NonlinearForm form) {
  const GridPtr& g = ctx.grid;
  const int n = g->dim();
  Nonlinear out{VectorField(g), ScalarField(g)};

  if (form == NonlinearForm::Reduced1d) {
    require_1d(g, "reduced nonlinear form");
    const ScalarField& Va = U.V[0];
    const ScalarField& Vb = W.V[0];
    const ScalarField ee = mul(U.eta, W.eta);
    const ScalarField vv = mul(Va, Vb);
    ScalarField F = mul(ctx.inv_sqrt_h, dx(ee));
    F.axpy(3.0, mul(ctx.inv_sqrt_h, dx(vv)));
    F.axpy(-1.0, mul(ctx.hx_over_h32, vv));
    const ScalarField ev = dealias(pointwise_product(U.eta, Vb) + pointwise_product(W.eta, Va));
    out.F[0] = std::move(F);
    out.f = dx(mul(ctx.inv_sqrt_h, ev));
    return out;
  }

  const VectorField& Va = U.V;
  const VectorField& Vb = W.V;
  const ScalarField ee = mul(U.eta, W.eta);
  const ScalarField vv = dot(Va, Vb);
  const ScalarField div_a = divergence(Va);
  const ScalarField div_b = divergence(Vb);
  const ScalarField sa = dot(Va, ctx.grad_h);
  const ScalarField sb = dot(Vb, ctx.grad_h);
  const VectorField grad_ee = gradient(ee);
  const VectorField grad_vv = gradient(vv);

  std::vector<VectorField> dVa, dVb;  // dVa[j][i] = d_j Va_i
  for (int j = 0; j < n; ++j) {
    VectorField da(g), db(g);
    for (int i = 0; i < n; ++i) {
      da[i] = derivative(Va[i], j, 1);
      db[i] = derivative(Vb[i], j, 1);
    }
    dVa.push_back(std::move(da));
    dVb.push_back(std::move(db));
  }

  for (int i = 0; i < n; ++i) {
    ScalarField acc = grad_ee[i] + grad_vv[i];
    ScalarField adv(g);  // (Va.grad)Vb_i + (Vb.grad)Va_i + Va_i div Vb + Vb_i div Va
    for (int j = 0; j < n; ++j) {
      adv += pointwise_product(Va[j], dVb[j][i]);
      adv += pointwise_product(Vb[j], dVa[j][i]);
    }
    adv += pointwise_product(Va[i], div_b);
    adv += pointwise_product(Vb[i], div_a);
    acc += dealias(adv);
    const ScalarField curv = dealias(pointwise_product(sa, Vb[i]) + pointwise_product(sb, Va[i]));
    acc.axpy(0.5, mul(ctx.inv_h, curv));
    acc.axpy(-2.0, mul(ctx.inv_h, mul(vv, ctx.grad_h[i])));
    out.F[i] = mul(ctx.inv_sqrt_h, acc);
  }

  VectorField ev(g);
  for (int i = 0; i < n; ++i) ev[i] = dealias(pointwise_product(U.eta, Vb[i]) + pointwise_product(W.eta, Va[i]));
  ScalarField fb = divergence(ev);
  const ScalarField tilt = dealias(pointwise_product(U.eta, sb) + pointwise_product(W.eta, sa));
  fb.axpy(-0.5, mul(ctx.inv_h, tilt));
  out.f = mul(ctx.inv_sqrt_h, fb);
  return out;
}

Nonlinear compute_Fh_fh(const OperatorContext& ctx, const State& U, NonlinearForm form) {
  Nonlinear n = nonlinear_pair(ctx, U, U, form);
  n.F *= 0.5;
  n.f *= 0.5;
  return n;
}

Nonlinear compute_Fh_fh(const State& U, const Bathymetry& b, NonlinearForm form) {
  return compute_Fh_fh(OperatorContext(b, CoefficientSet{}, 0.0), U, form);
}

Model::Model(const Bathymetry& b, const CoefficientSet& c, double epsilon, RegimeTag regime, RhsOptions opt)
    : ctx_(b, c, epsilon), regime_(regime), opt_(opt) {
  form_ = NonlinearForm::General;
  if (regime == RegimeTag::Fast1d) {
    require_1d(ctx_.grid, "fast regime");
    require_fast_pair(ctx_);
    form_ = NonlinearForm::Reduced1d;
  }
}

bool Model::has_mass2() const { return ctx_.c.d1 != 0.0 || ctx_.c.d2 != 0.0; }

VectorField Model::linear_momentum(const ScalarField& eta) const {
  const double he = 0.5 * ctx_.epsilon;
  if (fast()) {
    ScalarField m = mul(ctx_.sqrt_h, dx(eta));
    m.axpy(he, apply_Bh(ctx_, eta, false));
    return as_vector(std::move(m));
  }
  VectorField m = scale_by(ctx_.sqrt_h, gradient(eta));
  m.axpy(he, dispersive_momentum(ctx_, eta));
  return m;
}

ScalarField Model::linear_mass(const VectorField& V) const {
  const double he = 0.5 * ctx_.epsilon;
  if (fast()) {
    ScalarField m = dx(mul(ctx_.sqrt_h, V[0]));
    m.axpy(he, apply_Ch(ctx_, V[0], false));
    return m;
  }
  ScalarField m = divergence(scale_by(ctx_.sqrt_h, V));
  m.axpy(he, dispersive_mass(ctx_, V));
  return m;
}

Rhs Model::solve(VectorField momentum, ScalarField mass) const {
  Rhs r;
  const bool has_mass1 = ctx_.c.a1 != 0.0 || ctx_.c.a2 != 0.0;
  r.dV = has_mass1 ? invert_mass1(ctx_, momentum) : dealias(momentum);
  r.dV *= -1.0;
  r.deta = has_mass2() ? invert_mass2(ctx_, mass) : dealias(mass);
  r.deta *= -1.0;
  return r;
}

Rhs Model::rhs(const State& s) const {
  VectorField mom = linear_momentum(s.eta);
  ScalarField mass = linear_mass(s.V);
  if (opt_.nonlinear) {
    const Nonlinear n = nonlinear_pair(ctx_, s, s, form_);
    mom.axpy(0.25 * ctx_.epsilon, n.F);
    mass.axpy(0.25 * ctx_.epsilon, n.f);
  }
  return solve(std::move(mom), std::move(mass));
}

TimeDerivatives Model::cascade(const State& s) const {
  TimeDerivatives d;
  Rhs first = rhs(s);
  const State ut{first.dV, first.deta, s.t};
  VectorField mom = linear_momentum(ut.eta);
  ScalarField mass = linear_mass(ut.V);
  if (opt_.nonlinear) {
    const Nonlinear n = nonlinear_pair(ctx_, s, ut, form_);
    mom.axpy(0.5 * ctx_.epsilon, n.F);
    mass.axpy(0.5 * ctx_.epsilon, n.f);
  }
  Rhs second = solve(std::move(mom), std::move(mass));
  d.V_t = std::move(first.dV);
  d.eta_t = std::move(first.deta);
  d.V_tt = std::move(second.dV);
  d.eta_tt = std::move(second.deta);
  return d;
}

Rhs assemble_rhs(const State& s, const Bathymetry& b, const CoefficientSet& c, double epsilon, RegimeTag regime,
                 RhsOptions opt) {
  return Model(b, c, epsilon, regime, opt).rhs(s);
}

TimeDerivatives time_derivative_cascade(const State& s, const Bathymetry& b, const CoefficientSet& c,
                                        double epsilon, RegimeTag regime, RhsOptions opt) {
  return Model(b, c, epsilon, regime, opt).cascade(s);
}

}  // namespace bsq
