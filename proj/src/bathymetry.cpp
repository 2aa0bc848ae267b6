#include "bsq/bathymetry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bsq/errors.hpp"

namespace bsq {

namespace {

// ||grad h||_{H^s} with a relative spectral noise floor: high Sobolev weights would
// otherwise amplify FFT round-off in empty modes on fine grids
double grad_sobolev_norm(const ScalarField& h, double s) {
  const Grid& g = *h.grid;
  const Spectrum sp = fft(h);
  double peak = 0.0;
  for (std::size_t m = 0; m < sp.size(); ++m)
    if (g.xi2()[m] > 0.0) peak = std::max(peak, std::abs(sp[m]));
  const double floor = 1e-13 * peak;
  double acc = 0.0;
  for (std::size_t m = 0; m < sp.size(); ++m) {
    if (std::abs(sp[m]) <= floor) continue;
    double k2 = 0.0;
    for (int a = 0; a < g.dim(); ++a)
      if (!g.nyquist(a)[m]) k2 += g.xi(a)[m] * g.xi(a)[m];
    acc += k2 * std::pow(1.0 + g.xi2()[m], s) * std::norm(sp[m]);
  }
  const double n = static_cast<double>(g.size());
  return std::sqrt(acc * g.volume() / (n * n));
}

}  // namespace

Bathymetry::Bathymetry(ScalarField depth, double floor, std::string tag)
    : h(std::move(depth)), h0(floor), profile_tag(std::move(tag)) {
  min_h = *std::min_element(h.v.begin(), h.v.end());
  max_h = *std::max_element(h.v.begin(), h.v.end());
  grad_norms.resize(kMaxCachedOrder + 1);
  for (int m = 0; m <= kMaxCachedOrder; ++m) grad_norms[m] = grad_sobolev_norm(h, m);
}

double Bathymetry::grad_norm(double m) const {
  if (m >= 0 && m <= kMaxCachedOrder && m == std::floor(m)) return grad_norms[static_cast<int>(m)];
  return grad_sobolev_norm(h, m);
}

std::string to_string(BathyKind k) {
  switch (k) {
    case BathyKind::Flat: return "flat";
    case BathyKind::Slow: return "slow";
    case BathyKind::Fast: return "fast";
    case BathyKind::Custom: return "custom";
  }
  return "unknown";
}

BathyKind bathy_kind_from_string(const std::string& s) {
  if (s == "flat") return BathyKind::Flat;
  if (s == "slow") return BathyKind::Slow;
  if (s == "fast") return BathyKind::Fast;
  if (s == "custom") return BathyKind::Custom;
  throw Error(ErrorCode::ConfigInvalid, "unknown bathymetry kind '" + s + "'");
}

namespace {

ScalarField trig_sum(const GridPtr& g, const std::vector<BathyMode>& modes) {
  const double two_pi = 2.0 * std::numbers::pi;
  return sample(g, [&](double x, double y) {
    double acc = 0.0;
    for (const auto& m : modes) {
      double arg = two_pi * m.kx * x / g->length(0) + m.phase;
      if (g->dim() == 2) arg += two_pi * m.ky * y / g->length(1);
      acc += m.amplitude * std::sin(arg);
    }
    return acc;
  });
}

double grad_hs(const ScalarField& b, double s) { return grad_sobolev_norm(b, s); }

}  // namespace

Bathymetry make_bathymetry(const GridPtr& g, const BathymetrySpec& spec) {
  if (!(spec.h0 > 0.0)) throw Error(ErrorCode::ConfigInvalid, "cavitation floor h0 must be positive");
  if (spec.h0 > 1.0)
    throw Error(ErrorCode::CavitationViolation, "no depth profile around h=1 can stay above h0 > 1");

  ScalarField b(g);
  switch (spec.kind) {
    case BathyKind::Flat: break;
    case BathyKind::Slow: {
      if (!(spec.epsilon > 0.0 && spec.epsilon < 1.0))
        throw Error(ErrorCode::ConfigInvalid, "slow bathymetry needs epsilon in (0,1)");
      b = (spec.epsilon * spec.amplitude) * trig_sum(g, spec.modes);
      const double n = grad_hs(b, spec.s + 2.0);
      const double bound = spec.C0 * spec.epsilon;
      if (n > bound) b *= bound / n;
      break;
    }
    case BathyKind::Fast: {
      b = spec.amplitude * trig_sum(g, spec.modes);
      const double n = grad_hs(b, 4.0);
      if (n > 1.0) b *= 1.0 / n;
      break;
    }
    case BathyKind::Custom: {
      if (spec.samples.size() != g->size())
        throw Error(ErrorCode::ConfigInvalid, "custom bathymetry sample count does not match grid");
      ScalarField h(g, spec.samples);
      b = dealias(constant(g, 1.0) - h);
      break;
    }
  }

  // keep 1 - b inside [h0, 2]
  const double bmax = *std::max_element(b.v.begin(), b.v.end());
  const double bmin = *std::min_element(b.v.begin(), b.v.end());
  double factor = 1.0;
  if (bmax > 1.0 - spec.h0) factor = std::min(factor, (1.0 - spec.h0) / bmax);
  if (bmin < -1.0) factor = std::min(factor, -1.0 / bmin);
  if (factor < 1.0) b *= factor;

  Bathymetry out(constant(g, 1.0) - b, spec.h0, to_string(spec.kind));
  if (out.min_h < spec.h0 * (1.0 - 1e-12))
    throw Error(ErrorCode::CavitationViolation, "rescaling could not lift min h above h0");
  return out;
}

bool BathymetryReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const HypothesisCheck& c) { return c.pass; });
}

std::string BathymetryReport::failures() const {
  std::string s;
  for (const auto& c : checks) {
    if (c.pass) continue;
    if (!s.empty()) s += "; ";
    s += c.name + " (value " + std::to_string(c.value) + ", bound " + std::to_string(c.bound) + ")";
  }
  return s;
}

BathymetryReport validate_bathymetry(const Bathymetry& b, RegimeTag regime, double s, double epsilon,
                                     double C0, double c0) {
  BathymetryReport r;
  r.checks.push_back({"non-cavitation min h >= h0", b.min_h, b.h0, b.h0 > 0.0 && b.min_h >= b.h0});
  r.checks.push_back({"max h <= 2", b.max_h, 2.0, b.max_h <= 2.0});
  const int dim = b.h.grid->dim();
  switch (regime) {
    case RegimeTag::Slow1d:
    case RegimeTag::Slow2d: {
      const double n = b.grad_norm(s + 2.0);
      r.checks.push_back({"slow bound ||grad h||_{H^{s+2}} <= C0 eps", n, C0 * epsilon, n <= C0 * epsilon * (1 + 1e-9)});
      const double m = b.grad_norm(s);
      r.checks.push_back({"smallness ||grad h||_{H^s} <= c0", m, c0, m <= c0});
      const int want = regime == RegimeTag::Slow1d ? 1 : 2;
      r.checks.push_back({"grid dimension", double(dim), double(want), dim == want});
      break;
    }
    case RegimeTag::Fast1d: {
      const double n = b.grad_norm(4.0);
      r.checks.push_back({"fast bound ||d_x h||_{H^4} <= 1", n, 1.0, n <= 1.0 + 1e-9});
      r.checks.push_back({"grid dimension", double(dim), 1.0, dim == 1});
      break;
    }
    case RegimeTag::FullySymmetric: break;
  }
  return r;
}

}  // namespace bsq
