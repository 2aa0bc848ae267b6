#include "bsq/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <random>

#include "bsq/energy.hpp"
#include "bsq/errors.hpp"

namespace bsq {

using nlohmann::json;

std::string to_string(InitialProfile p) {
  switch (p) {
    case InitialProfile::Zero: return "zero";
    case InitialProfile::Gaussian: return "gaussian";
    case InitialProfile::SingleMode: return "single_mode";
    case InitialProfile::Random: return "random";
  }
  return "?";
}

InitialProfile initial_profile_from_string(const std::string& s) {
  if (s == "zero") return InitialProfile::Zero;
  if (s == "gaussian") return InitialProfile::Gaussian;
  if (s == "single_mode") return InitialProfile::SingleMode;
  if (s == "random") return InitialProfile::Random;
  throw Error(ErrorCode::ConfigInvalid, "unknown initial profile '" + s + "'");
}

CoefficientSet RunConfig::coefficient_set() const {
  if (coefficients) return *coefficients;
  if (bbm) return coefficients_from_bbm(*bbm);
  throw Error(ErrorCode::ConfigInvalid, "neither bbm nor coefficients given");
}

namespace {

template <class T>
T get(const json& j, const char* key, T def) {
  if (!j.contains(key)) return def;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ConfigInvalid, std::string("bad value for '") + key + "': " + e.what());
  }
}

void reject_unknown(const json& j, std::initializer_list<const char*> keys, const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : keys) ok = ok || it.key() == k;
    if (!ok) throw Error(ErrorCode::ConfigInvalid, "unknown key '" + it.key() + "' in " + where);
  }
}

}  // namespace

json to_json(const BbmParams& p) {
  return {{"lambda1", p.lambda1}, {"lambda2", p.lambda2}, {"mu", p.mu}, {"theta", p.theta}};
}

json to_json(const CoefficientSet& c) {
  return {{"a1", c.a1}, {"a2", c.a2}, {"d1", c.d1}, {"d2", c.d2}, {"b1", c.b1}, {"b2", c.b2},
          {"b3", c.b3}, {"b4", c.b4}, {"c1", c.c1}, {"c2", c.c2}, {"c3", c.c3}, {"c4", c.c4}};
}

RunConfig config_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::ConfigInvalid, "config must be a JSON object");
  reject_unknown(j,
                 {"regime", "bbm", "coefficients", "epsilon", "grid", "bathymetry", "initial", "s", "T_end_factor",
                  "safety", "dt_max", "out", "stride", "seed", "nonlinear", "epsilons"},
                 "config");
  RunConfig c;
  c.regime = regime_tag_from_string(get<std::string>(j, "regime", "fast1d"));
  c.seed = get<std::uint64_t>(j, "seed", 0);
  if (j.contains("bbm")) {
    const json& b = j.at("bbm");
    if (b.is_string()) {
      if (b.get<std::string>() != "search")
        throw Error(ErrorCode::ConfigInvalid, "bbm must be an object or the string \"search\"");
      c.bbm = find_bbm_for_regime(c.regime, c.seed);
    } else {
      reject_unknown(b, {"lambda1", "lambda2", "mu", "theta"}, "bbm");
      c.bbm = BbmParams{get(b, "lambda1", 0.0), get(b, "lambda2", 0.0), get(b, "mu", 0.0), get(b, "theta", 0.0)};
    }
  }
  if (j.contains("coefficients")) {
    const json& k = j.at("coefficients");
    reject_unknown(k, {"a1", "a2", "d1", "d2", "b1", "b2", "b3", "b4", "c1", "c2", "c3", "c4"}, "coefficients");
    CoefficientSet s;
    s.a1 = get(k, "a1", 0.0), s.a2 = get(k, "a2", 0.0), s.d1 = get(k, "d1", 0.0), s.d2 = get(k, "d2", 0.0);
    s.b1 = get(k, "b1", 0.0), s.b2 = get(k, "b2", 0.0), s.b3 = get(k, "b3", 0.0), s.b4 = get(k, "b4", 0.0);
    s.c1 = get(k, "c1", 0.0), s.c2 = get(k, "c2", 0.0), s.c3 = get(k, "c3", 0.0), s.c4 = get(k, "c4", 0.0);
    c.coefficients = s;
  }
  c.epsilon = get(j, "epsilon", 0.1);
  if (j.contains("grid")) {
    const json& g = j.at("grid");
    reject_unknown(g, {"dim", "n", "L", "ny", "Ly"}, "grid");
    c.grid.dim = get(g, "dim", 1);
    c.grid.nx = get(g, "n", 256);
    c.grid.lx = get(g, "L", 2.0 * std::numbers::pi);
    c.grid.ny = get(g, "ny", c.grid.dim == 2 ? c.grid.nx : 1);
    c.grid.ly = get(g, "Ly", c.grid.dim == 2 ? c.grid.lx : 1.0);
  }
  c.s = get(j, "s", 2.0);
  if (j.contains("bathymetry")) {
    const json& b = j.at("bathymetry");
    reject_unknown(b, {"kind", "amplitude", "modes", "samples", "h0", "C0"}, "bathymetry");
    auto& bs = c.bathymetry;
    bs.kind = bathy_kind_from_string(get<std::string>(b, "kind", "flat"));
    bs.amplitude = get(b, "amplitude", 1.0);
    bs.h0 = get(b, "h0", 0.5);
    bs.C0 = get(b, "C0", 1.0);
    if (b.contains("modes")) {
      bs.modes.clear();
      for (const json& m : b.at("modes")) {
        reject_unknown(m, {"kx", "ky", "amplitude", "phase"}, "bathymetry mode");
        bs.modes.push_back(BathyMode{get(m, "kx", 1), get(m, "ky", 0), get(m, "amplitude", 1.0), get(m, "phase", 0.0)});
      }
    }
    bs.samples = get(b, "samples", std::vector<double>{});
  }
  if (j.contains("initial")) {
    const json& i = j.at("initial");
    reject_unknown(i, {"profile", "amplitude", "width", "center", "mode", "s", "seed", "calE0"}, "initial");
    auto& is = c.initial;
    is.profile = initial_profile_from_string(get<std::string>(i, "profile", "gaussian"));
    is.amplitude = get(i, "amplitude", 1.0);
    is.width = get(i, "width", 0.5);
    is.center = get(i, "center", 0.5);
    is.mode = get(i, "mode", 1);
    is.s = get(i, "s", 2.0);
    is.seed = get<std::uint64_t>(i, "seed", 1);
    if (i.contains("calE0")) is.calE0 = get(i, "calE0", 1.0);
  }
  c.T_end_factor = get(j, "T_end_factor", 1.0);
  c.safety = get(j, "safety", 0.5);
  c.dt_max = get(j, "dt_max", 0.01);
  c.out = get<std::string>(j, "out", "out");
  c.stride = get(j, "stride", 10);
  c.nonlinear = get(j, "nonlinear", true);
  c.epsilons = get(j, "epsilons", std::vector<double>{});
  validate_config(c);
  return c;
}

void validate_config(const RunConfig& c) {
  if (c.bbm.has_value() == c.coefficients.has_value())
    throw Error(ErrorCode::ConfigInvalid, "exactly one of 'bbm' and 'coefficients' must be given");
  if (!(c.epsilon > 0.0 && c.epsilon < 1.0)) throw Error(ErrorCode::ConfigInvalid, "epsilon must lie in (0,1)");
  for (double e : c.epsilons)
    if (!(e > 0.0 && e < 1.0)) throw Error(ErrorCode::ConfigInvalid, "every sweep epsilon must lie in (0,1)");
  if (c.grid.dim != 1 && c.grid.dim != 2) throw Error(ErrorCode::ConfigInvalid, "grid.dim must be 1 or 2");
  if (!(c.grid.lx > 0.0) || !(c.grid.ly > 0.0)) throw Error(ErrorCode::ConfigInvalid, "grid lengths must be positive");
  if (!(c.T_end_factor > 0.0)) throw Error(ErrorCode::ConfigInvalid, "T_end_factor must be positive");
  if (!(c.safety > 0.0 && c.safety <= 1.0)) throw Error(ErrorCode::ConfigInvalid, "safety must lie in (0,1]");
  if (!(c.dt_max > 0.0)) throw Error(ErrorCode::ConfigInvalid, "dt_max must be positive");
  if (c.stride < 1) throw Error(ErrorCode::ConfigInvalid, "stride must be >= 1");
  if (c.initial.calE0 && !(*c.initial.calE0 > 0.0))
    throw Error(ErrorCode::ConfigInvalid, "initial.calE0 must be positive");
  if (c.bbm && (c.bbm->theta < 0.0 || c.bbm->theta > 1.0))
    throw Error(ErrorCode::ConfigInvalid, "bbm.theta must lie in [0,1]");
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ConfigInvalid, "cannot open config '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ConfigInvalid, "config '" + path + "' is not valid JSON: " + e.what());
  }
  return config_from_json(j);
}

json to_json(const RunConfig& c) {
  json j;
  j["regime"] = to_string(c.regime);
  if (c.bbm) j["bbm"] = to_json(*c.bbm);
  if (c.coefficients) j["coefficients"] = to_json(*c.coefficients);
  j["epsilon"] = c.epsilon;
  j["grid"] = {{"dim", c.grid.dim}, {"n", c.grid.nx}, {"L", c.grid.lx}};
  if (c.grid.dim == 2) {
    j["grid"]["ny"] = c.grid.ny;
    j["grid"]["Ly"] = c.grid.ly;
  }
  const auto& b = c.bathymetry;
  j["bathymetry"] = {{"kind", to_string(b.kind)}, {"amplitude", b.amplitude}, {"h0", b.h0}, {"C0", b.C0}};
  json modes = json::array();
  for (const auto& m : b.modes)
    modes.push_back({{"kx", m.kx}, {"ky", m.ky}, {"amplitude", m.amplitude}, {"phase", m.phase}});
  j["bathymetry"]["modes"] = modes;
  if (!b.samples.empty()) j["bathymetry"]["samples"] = b.samples;
  const auto& i = c.initial;
  j["initial"] = {{"profile", to_string(i.profile)}, {"amplitude", i.amplitude}, {"width", i.width},
                  {"center", i.center},           {"mode", i.mode},           {"s", i.s},
                  {"seed", i.seed}};
  if (i.calE0) j["initial"]["calE0"] = *i.calE0;
  j["s"] = c.s;
  j["T_end_factor"] = c.T_end_factor;
  j["safety"] = c.safety;
  j["dt_max"] = c.dt_max;
  j["out"] = c.out;
  j["stride"] = c.stride;
  j["seed"] = c.seed;
  j["nonlinear"] = c.nonlinear;
  if (!c.epsilons.empty()) j["epsilons"] = c.epsilons;
  return j;
}

GridPtr make_grid(const GridSpec& g) {
  return g.dim == 1 ? make_grid_1d(g.nx, g.lx) : make_grid_2d(g.nx, g.lx, g.ny, g.ly);
}

State make_initial_state(const GridPtr& g, const InitialDataSpec& spec) {
  State s = State::zero(g);
  const double L = g->length(0);
  switch (spec.profile) {
    case InitialProfile::Zero: break;
    case InitialProfile::Gaussian: {
      const double w = spec.width * L / (2.0 * std::numbers::pi);
      const double xc = spec.center * L;
      const double yc = g->dim() == 2 ? spec.center * g->length(1) : 0.0;
      auto pdist = [](double d, double len) { return d - len * std::round(d / len); };
      s.eta = sample(g, [&](double x, double y) {
        const double dx = pdist(x - xc, L);
        const double dy = g->dim() == 2 ? pdist(y - yc, g->length(1)) : 0.0;
        return spec.amplitude * std::exp(-(dx * dx + dy * dy) / (w * w));
      });
      s.V[0] = s.eta;
      break;
    }
    case InitialProfile::SingleMode: {
      const double k = 2.0 * std::numbers::pi * spec.mode / L;
      s.eta = sample(g, [&](double x, double) { return spec.amplitude * std::cos(k * x); });
      s.V[0] = s.eta;
      break;
    }
    case InitialProfile::Random: {
      std::mt19937_64 rng(spec.seed);
      s.eta = random_field(g, spec.s, rng);
      for (int a = 0; a < g->dim(); ++a) s.V[a] = random_field(g, spec.s, rng);
      const double m = std::max(max_abs(s.eta), 1e-300);
      s.eta *= spec.amplitude / m;
      s.V *= spec.amplitude / m;
      break;
    }
  }
  // smooth profiles still carry tiny modes above the cutoff
  s.eta = dealias(s.eta);
  s.V = dealias(s.V);
  return s;
}

State prepare_initial_state(const GridPtr& g, const InitialDataSpec& spec, double epsilon) {
  State s = make_initial_state(g, spec);
  if (spec.calE0) {
    const double e0 = initial_data_norm(s.V, s.eta, epsilon);
    if (e0 == 0.0) throw Error(ErrorCode::ConfigInvalid, "cannot normalize zero initial data");
    const double k = std::sqrt(*spec.calE0 / e0);
    s.eta *= k;
    s.V *= k;
  }
  return s;
}

}  // namespace bsq
