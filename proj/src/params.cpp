#include "bsq/params.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>

#include "bsq/errors.hpp"

namespace bsq {

std::string to_string(RegimeTag t) {
  switch (t) {
    case RegimeTag::Slow1d: return "slow1d";
    case RegimeTag::Slow2d: return "slow2d";
    case RegimeTag::Fast1d: return "fast1d";
    case RegimeTag::FullySymmetric: return "fully_symmetric";
  }
  return "unknown";
}

RegimeTag regime_tag_from_string(const std::string& s) {
  if (s == "slow1d") return RegimeTag::Slow1d;
  if (s == "slow2d") return RegimeTag::Slow2d;
  if (s == "fast1d") return RegimeTag::Fast1d;
  if (s == "fully_symmetric") return RegimeTag::FullySymmetric;
  throw Error(ErrorCode::ConfigInvalid, "unknown regime tag '" + s + "'");
}

bool RegimeReport::ok_for(RegimeTag t) const {
  switch (t) {
    case RegimeTag::Slow1d: return slow1d_ok && linear_wellposed;
    case RegimeTag::Slow2d: return slow2d_ok && linear_wellposed;
    case RegimeTag::Fast1d: return fast1d_ok && linear_wellposed;
    case RegimeTag::FullySymmetric: return fully_symmetric;
  }
  return false;
}

CoefficientSet coefficients_from_bbm(const BbmParams& p) {
  const double th = p.theta;
  if (!(th >= 0.0 && th <= 1.0)) throw Error(ErrorCode::ThetaOutOfRange, "theta must lie in [0,1]");
  const double l1 = p.lambda1, l2 = p.lambda2, mu = p.mu;
  const double t2 = th * th;
  CoefficientSet c;
  c.a1 = (1.0 - t2) * (1.0 - l1);
  c.a2 = 2.0 * (1.0 - th) * (1.0 - l2);
  c.d1 = (1.0 - mu) * (t2 - 1.0 / 3.0);
  c.d2 = (1.0 - mu) * (1.5 * t2 - 7.0 / 6.0);
  c.b1 = l1 * (1.0 - t2);
  c.b2 = 2.0 * l2 * (1.0 - th) - 1.5 * l1 * (1.0 - t2);
  c.b3 = 0.5 * l1 * (1.0 - t2);
  c.b4 = l2 * (1.0 - th) - 0.5 * l1 * (1.0 - t2);
  c.c1 = mu * (t2 - 1.0 / 3.0);
  c.c2 = mu * (1.5 * t2 - 7.0 / 6.0);
  c.c3 = -0.5 * t2 + 2.0 * th - 7.0 / 6.0;
  c.c4 = -0.5 * (th - 2.0) * (th - 2.0);
  return c;
}

namespace {

struct Checker {
  std::vector<Violation>* out;
  std::string prefix;
  bool ok = true;

  void eq(const char* name, double r) {
    if (std::abs(r) > kEqualityTol) fail(name, r);
  }
  void ge0(const char* name, double v) {
    if (v < -kEqualityTol) fail(name, v);
  }
  void le0(const char* name, double v) {
    if (v > kEqualityTol) fail(name, v);
  }
  void gt0(const char* name, double v) {
    if (!(v > kStrictMargin)) fail(name, v);
  }
  void lt0(const char* name, double v) {
    if (!(v < -kStrictMargin)) fail(name, v);
  }
  void fail(const char* name, double r) {
    ok = false;
    if (out) out->push_back({prefix + name, r});
  }
};

}  // namespace

RegimeReport validate_coefficients(const CoefficientSet& c, int dim) {
  RegimeReport rep;

  {
    // first branch: a1,d1 >= 0, b1,c1 <= 0; second branch: b1 = c1 > 0
    Checker base{nullptr, ""};
    base.ge0("a1>=0", c.a1);
    base.ge0("d1>=0", c.d1);
    Checker br1{nullptr, ""};
    br1.le0("b1<=0", c.b1);
    br1.le0("c1<=0", c.c1);
    Checker br2{nullptr, ""};
    br2.eq("b1=c1", c.b1 - c.c1);
    br2.gt0("b1>0", c.b1);
    rep.linear_wellposed = base.ok && (br1.ok || br2.ok);
    if (!rep.linear_wellposed) {
      Checker v{&rep.violations, "wellposed: "};
      v.ge0("a1>=0", c.a1);
      v.ge0("d1>=0", c.d1);
      if (!br1.ok && !br2.ok) {
        v.le0("b1<=0", c.b1);
        v.le0("c1<=0", c.c1);
        v.eq("b1=c1 (second branch)", c.b1 - c.c1);
      }
    }
  }
  {
    Checker s{&rep.violations, "slow1d: "};
    s.gt0("a1>0", c.a1);
    s.gt0("d1>0", c.d1);
    s.eq("b1=c1", c.b1 - c.c1);
    rep.slow1d_ok = s.ok;
  }
  {
    Checker s{&rep.violations, "slow2d: "};
    s.gt0("a1>0", c.a1);
    s.gt0("d1>0", c.d1);
    s.eq("a2=0", c.a2);
    s.eq("b1=c1", c.b1 - c.c1);
    s.eq("b3=-c3", c.b3 + c.c3);
    rep.slow2d_ok = s.ok;
  }
  {
    Checker f{&rep.violations, "fast1d: "};
    if (dim != 1) f.fail("dim=1", static_cast<double>(dim - 1));
    f.gt0("a1>0", c.a1);
    f.eq("a2=0", c.a2);
    f.eq("d1=0", c.d1);
    f.eq("d2=0", c.d2);
    f.eq("b1=c1", c.b1 - c.c1);
    f.lt0("b1<0", c.b1);
    f.eq("b2+c2+b3+c3=0", c.b2 + c.c2 + c.b3 + c.c3);
    rep.fast1d_ok = f.ok;
  }
  {
    Checker f{&rep.violations, "fully_symmetric: "};
    f.ge0("a1>=0", c.a1);
    f.ge0("d1>=0", c.d1);
    f.eq("a2=0", c.a2);
    f.eq("d2=0", c.d2);
    f.eq("b1=c1", c.b1 - c.c1);
    f.eq("b2=-c2", c.b2 + c.c2);
    f.eq("b3=-c3", c.b3 + c.c3);
    f.eq("b4=c4", c.b4 - c.c4);
    rep.fully_symmetric = f.ok;
  }
  return rep;
}

namespace {

// Root of a monotone-or-linear scalar function on [lo,hi] by bisection.
bool bisect(const std::function<double(double)>& fn, double lo, double hi, double& root) {
  double flo = fn(lo), fhi = fn(hi);
  if (flo == 0.0) { root = lo; return true; }
  if (fhi == 0.0) { root = hi; return true; }
  if ((flo > 0) == (fhi > 0)) return false;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = fn(mid);
    if (fm == 0.0) { lo = hi = mid; break; }
    if ((fm > 0) == (flo > 0)) { lo = mid; flo = fm; } else { hi = mid; }
  }
  root = 0.5 * (lo + hi);
  return true;
}

// minimum of a1,d1 required of a search candidate, keeps mass operators well conditioned
constexpr double kAdmissibleMargin = 0.1;

bool accept(const BbmParams& p, RegimeTag target) {
  const auto c = coefficients_from_bbm(p);
  const int dim = target == RegimeTag::Slow2d ? 2 : 1;
  const auto r = validate_coefficients(c, dim);
  if (!r.ok_for(target)) return false;
  if (target == RegimeTag::Slow1d || target == RegimeTag::Slow2d)
    return std::min(c.a1, c.d1) >= kAdmissibleMargin;
  return true;
}

// lambda2 = 1 kills a2; the remaining equalities fix lambda1 (slow2d) and mu.
bool solve_slow(RegimeTag target, double theta, double lambda1_guess, BbmParams& out) {
  BbmParams p{lambda1_guess, 1.0, 0.0, theta};
  if (target == RegimeTag::Slow2d) {
    auto g = [&](double l1) {
      BbmParams q = p;
      q.lambda1 = l1;
      const auto c = coefficients_from_bbm(q);
      return c.b3 + c.c3;
    };
    if (!bisect(g, -kSearchBox, kSearchBox, p.lambda1)) return false;
  }
  auto h = [&](double mu) {
    BbmParams q = p;
    q.mu = mu;
    const auto c = coefficients_from_bbm(q);
    return c.b1 - c.c1;
  };
  if (!bisect(h, -kSearchBox, kSearchBox, p.mu)) return false;
  if (!accept(p, target)) return false;
  out = p;
  return true;
}

}  // namespace

BbmParams find_bbm_for_regime(RegimeTag target, std::uint64_t seed) {
  switch (target) {
    case RegimeTag::Fast1d: {
      // a2=0 -> lambda2=1, d1=d2=0 -> mu=1, b1=c1 -> lambda1=(theta^2-1/3)/(1-theta^2)
      const double th = 0.0;
      BbmParams p{(th * th - 1.0 / 3.0) / (1.0 - th * th), 1.0, 1.0, th};
      if (accept(p, target)) return p;
      break;
    }
    case RegimeTag::Slow1d:
    case RegimeTag::Slow2d: {
      for (int i = 0; i <= 9; ++i) {
        BbmParams p;
        if (solve_slow(target, 0.1 * i, 0.0, p)) return p;
      }
      std::mt19937_64 rng(seed);
      std::uniform_real_distribution<double> th(0.0, 1.0), l1(-kSearchBox, kSearchBox);
      for (int i = 0; i < 10000; ++i) {
        const double t = th(rng);
        const double l = l1(rng);
        BbmParams p;
        if (solve_slow(target, t, l, p)) return p;
      }
      break;
    }
    case RegimeTag::FullySymmetric: {
      // a2=0 needs theta=1 or lambda2=1; d2=0 needs mu=1 or theta^2=7/9.
      std::vector<BbmParams> cand;
      cand.push_back({0.0, 0.0, 0.0, 1.0});
      {
        // lambda2=mu=1: b1=c1 and b3=-c3 force theta=2/3
        const double th = 2.0 / 3.0;
        cand.push_back({(th * th - 1.0 / 3.0) / (1.0 - th * th), 1.0, 1.0, th});
      }
      {
        // lambda2=1, theta^2=7/9: b3=-c3 fixes lambda1, b1=c1 fixes mu
        const double th = std::sqrt(7.0 / 9.0);
        const double t2 = th * th;
        const double l1 = (t2 - 4.0 * th + 7.0 / 3.0) / (1.0 - t2);
        const double mu = l1 * (1.0 - t2) / (t2 - 1.0 / 3.0);
        cand.push_back({l1, 1.0, mu, th});
      }
      for (const auto& p : cand)
        if (validate_coefficients(coefficients_from_bbm(p), 2).fully_symmetric) return p;
      throw Error(ErrorCode::Infeasible, "fully symmetric constraints admit no BBM parameters");
    }
  }
  throw Error(ErrorCode::Infeasible, "no parameters found for regime " + to_string(target));
}

DispersionSample dispersion_eigenvalues(const CoefficientSet& c, double epsilon, double xi) {
  DispersionSample d;
  d.xi = xi;
  d.epsilon = epsilon;
  const double e2 = 0.5 * epsilon * xi * xi;
  const double num = (1.0 - e2 * c.b1) * (1.0 - e2 * c.c1);
  const double den = (1.0 + e2 * c.a1) * (1.0 + e2 * c.d1);
  const double ax = std::abs(xi);
  if (den <= 0.0) {
    d.ill_posed_mode = true;
    d.lambda_plus = {std::numeric_limits<double>::infinity(), 0.0};
  } else {
    const double rad = num / den;
    if (rad >= 0.0) {
      d.lambda_plus = {0.0, ax * std::sqrt(rad)};
    } else {
      d.ill_posed_mode = true;
      d.lambda_plus = {ax * std::sqrt(-rad), 0.0};
    }
  }
  d.lambda_minus = -d.lambda_plus;
  return d;
}

double dispersion_modulus(const CoefficientSet& c, double epsilon, double xi, double depth) {
  // depth H rescales x by H: lambda_H(xi) = sqrt(H) * lambda(eps*H^2, xi)
  const auto d = dispersion_eigenvalues(c, epsilon * depth * depth, xi);
  return std::sqrt(depth) * std::abs(d.lambda_plus);
}

}  // namespace bsq
