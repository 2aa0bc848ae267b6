#include "bsq/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "bsq/errors.hpp"
#include "bsq/io.hpp"
#include "bsq/timestepper.hpp"

namespace bsq {

Problem build_problem(const RunConfig& cfg) {
  validate_config(cfg);
  Problem p;
  p.coeffs = cfg.coefficient_set();
  const RegimeReport rr = validate_coefficients(p.coeffs, cfg.grid.dim);
  if (!rr.ok_for(cfg.regime)) {
    std::string msg = "coefficients are not admissible for regime " + to_string(cfg.regime);
    for (const auto& v : rr.violations) msg += "; " + v.constraint + " (residual " + format_double(v.residual) + ")";
    throw Error(ErrorCode::ConfigInvalid, msg);
  }
  p.grid = make_grid(cfg.grid);
  BathymetrySpec bs = cfg.bathymetry;
  bs.epsilon = cfg.epsilon;
  bs.s = cfg.s;
  try {
    p.bathy.emplace(make_bathymetry(p.grid, bs));
  } catch (const Error& e) {
    throw Error(ErrorCode::ConfigInvalid, std::string("bathymetry: ") + e.what());
  }
  const BathymetryReport br = validate_bathymetry(*p.bathy, cfg.regime, cfg.s, cfg.epsilon, bs.C0);
  if (!br.all_pass()) throw Error(ErrorCode::ConfigInvalid, "bathymetry hypotheses fail: " + br.failures());
  p.initial = prepare_initial_state(p.grid, cfg.initial, cfg.epsilon);
  return p;
}

namespace {

std::string eps_dir(double e) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "eps_%.6g", e);
  return buf;
}

}  // namespace

nlohmann::json run_metadata(const RunConfig& cfg, const RunResult& r) {
  nlohmann::json j;
  j["config"] = to_json(cfg);
  j["code_version"] = BSQ_VERSION;
  j["csv_schema_version"] = kCsvSchemaVersion;
  j["coefficients"] = to_json(cfg.coefficient_set());
  j["dt"] = r.dt;
  j["steps"] = r.steps;
  j["t_end"] = r.t_end;
  j["exit_code"] = r.exit_code;
  j["message"] = r.message;
  j["blowup_time"] = r.blowup_time ? nlohmann::json(*r.blowup_time) : nlohmann::json(nullptr);
  j["calE0"] = r.calE0;
  j["monitored0"] = r.monitored0;
  j["monitored_max"] = r.monitored_max;
  j["G"] = r.G ? nlohmann::json(*r.G) : nlohmann::json(nullptr);
  return j;
}

RunResult run_experiment(const RunConfig& cfg, RunOptions opt) {
  RunResult res;
  res.epsilon = cfg.epsilon;
  const Problem p = build_problem(cfg);
  const Model model(*p.bathy, p.coeffs, cfg.epsilon, cfg.regime, RhsOptions{cfg.nonlinear});

  res.t_end = cfg.t_end();
  const double dt_max = std::min(stable_dt(model, cfg.safety), cfg.dt_max);
  res.steps = std::max(1L, static_cast<long>(std::ceil(res.t_end / dt_max)));
  res.dt = res.t_end / static_cast<double>(res.steps);
  res.calE0 = initial_data_norm(p.initial.V, p.initial.eta, cfg.epsilon);

  std::vector<EnergyRecord> recs;
  auto record = [&](const State& s) {
    EnergyRecord r = evaluate_energy(model, s, cfg.s);
    r.calE0 = res.calE0;
    const double m = r.monitored();
    if (recs.empty()) res.monitored0 = m;
    res.monitored_max = std::max(res.monitored_max, m);
    recs.push_back(std::move(r));
  };

  State s = p.initial;
  try {
    record(s);
    for (long k = 1; k <= res.steps; ++k) {
      s = step_rk4(model, s, res.dt);
      s.t = res.dt * static_cast<double>(k);  // avoid accumulated rounding in t
      if (k % cfg.stride == 0 || k == res.steps) record(s);
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NonFinite && e.code() != ErrorCode::SolverDiverged) throw;
    res.exit_code = kExitBlowup;
    res.message = e.what();
    res.blowup_time = s.t + res.dt;
  }
  if (res.monitored0 > 0.0) res.G = res.monitored_max / res.monitored0;

  if (opt.write_outputs) {
    ensure_directory(cfg.out);
    const std::filesystem::path dir(cfg.out);
    write_energy_csv((dir / "energy.csv").string(), recs);
    write_json((dir / "metadata.json").string(), run_metadata(cfg, res));
    if (res.exit_code == kExitOk)
      write_state_snapshot((dir / "final_state.csv").string(), (dir / "final_state.json").string(), s);
  }
  if (opt.keep_records) res.records = std::move(recs);
  return res;
}

SweepResult sweep_epsilon(const RunConfig& cfg, const std::vector<double>& epsilons, RunOptions opt) {
  if (epsilons.empty()) throw Error(ErrorCode::ConfigInvalid, "epsilon sweep needs at least one value");
  for (double e : epsilons)
    if (!(e > 0.0 && e < 1.0)) throw Error(ErrorCode::ConfigInvalid, "every sweep epsilon must lie in (0,1)");

  SweepResult sw;
  sw.runs.resize(epsilons.size());
  const int n = static_cast<int>(epsilons.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (int i = 0; i < n; ++i) {
    RunConfig c = cfg;
    c.epsilon = epsilons[i];
    c.epsilons.clear();
    c.out = (std::filesystem::path(cfg.out) / eps_dir(epsilons[i])).string();
    try {
      sw.runs[i] = run_experiment(c, opt);
    } catch (const Error& e) {
      RunResult r;
      r.epsilon = epsilons[i];
      r.exit_code = kExitConfig;
      r.message = e.what();
      sw.runs[i] = std::move(r);
    }
  }

  double gmin = 0.0, gmax = 0.0;
  bool any = false;
  sw.all_ok = true;
  for (const auto& r : sw.runs) {
    if (r.exit_code != kExitOk || !r.G) {
      sw.all_ok = sw.all_ok && r.exit_code == kExitOk;
      continue;
    }
    gmin = any ? std::min(gmin, *r.G) : *r.G;
    gmax = any ? std::max(gmax, *r.G) : *r.G;
    any = true;
  }
  sw.flatness = any && gmin > 0.0 ? gmax / gmin : 0.0;

  if (opt.write_outputs) {
    ensure_directory(cfg.out);
    const std::filesystem::path dir(cfg.out);
    std::ofstream out((dir / "sweep.csv").string());
    out << "epsilon,G,monitored0,monitored_max,calE0,exit_code,blowup_time,dt,steps,flatness\n";
    for (const auto& r : sw.runs) {
      out << format_double(r.epsilon) << ',' << (r.G ? format_double(*r.G) : "") << ','
          << format_double(r.monitored0) << ',' << format_double(r.monitored_max) << ',' << format_double(r.calE0)
          << ',' << r.exit_code << ',' << (r.blowup_time ? format_double(*r.blowup_time) : "") << ','
          << format_double(r.dt) << ',' << r.steps << ',' << format_double(sw.flatness) << '\n';
    }
    nlohmann::json j;
    j["config"] = to_json(cfg);
    j["epsilons"] = epsilons;
    j["flatness"] = sw.flatness;
    j["all_ok"] = sw.all_ok;
    nlohmann::json runs = nlohmann::json::array();
    for (const auto& r : sw.runs) runs.push_back({{"epsilon", r.epsilon}, {"exit_code", r.exit_code}, {"message", r.message}});
    j["runs"] = runs;
    write_json((dir / "sweep.json").string(), j);
  }
  return sw;
}

}  // namespace bsq
