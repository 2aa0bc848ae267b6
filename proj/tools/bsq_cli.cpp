#include <omp.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bsq/errors.hpp"
#include "bsq/experiment.hpp"
#include "bsq/io.hpp"
#include "bsq/verify.hpp"

using namespace bsq;
using nlohmann::json;

namespace {

json ratio_json(const RatioStat& r) {
  return {{"name", r.name}, {"min", r.min_ratio}, {"max", r.max_ratio}, {"K", r.K}, {"samples", r.samples}};
}

struct Suite {
  json report = json::object();
  bool all_pass = true;
  void item(const std::string& name, bool pass, json detail) {
    detail["pass"] = pass;
    report[name] = std::move(detail);
    all_pass = all_pass && pass;
    std::printf("%-28s %s\n", name.c_str(), pass ? "PASS" : "FAIL");
  }
};

BathymetrySpec fast_bathy() {
  BathymetrySpec b;
  b.kind = BathyKind::Fast;
  b.amplitude = 0.3;
  b.modes = {BathyMode{1, 0, 1.0, 0.0}, BathyMode{2, 0, 0.5, 0.7}};
  return b;
}

BathymetrySpec slow_bathy(double eps) {
  BathymetrySpec b;
  b.kind = BathyKind::Slow;
  b.epsilon = eps;
  b.amplitude = 1.0;
  b.modes = {BathyMode{1, 0, 1.0, 0.0}};
  return b;
}

int run_verify(std::uint64_t seed, bool quick, const std::string& out) {
  Suite S;
  const int fam = quick ? 40 : 200;
  const CoefficientSet fast = coefficients_from_bbm(find_bbm_for_regime(RegimeTag::Fast1d, seed));
  const CoefficientSet slow = coefficients_from_bbm(find_bbm_for_regime(RegimeTag::Slow1d, seed));
  const double L = 2.0 * M_PI;

  {
    const auto r = check_cancellation(fast_bathy(), fast, 128, L, quick ? 5 : 20, seed);
    const bool pass = r.max_residual_fine <= 1e-8 && r.decay_factor >= 1e2;
    S.item("cancellation", pass,
           {{"residual_N", r.max_residual_coarse}, {"residual_2N", r.max_residual_fine},
            {"smooth_residual_N", r.smooth_residual_coarse}, {"smooth_residual_2N", r.smooth_residual_fine},
            {"decay_factor", r.decay_factor}, {"decay_exponent", r.decay_exponent}});
    CoefficientSet bad = fast;
    bad.c2 += 1.0;
    const auto n = check_cancellation(fast_bathy(), bad, 128, L, quick ? 5 : 20, seed, true);
    S.item("cancellation_negative", n.max_residual_fine >= 1e-2, {{"residual_2N", n.max_residual_fine}});
  }

  {
    const GridPtr g = make_grid_1d(256, L);
    const Bathymetry bf = make_bathymetry(g, fast_bathy());
    json per_eps = json::array();
    double kmin_m = 1e300, kmax_m = 0, kmin_d = 1e300, kmax_d = 0;
    for (double eps : {0.1, 0.05, 0.025}) {
      const Bathymetry bs = make_bathymetry(g, slow_bathy(eps));
      const auto rm = check_equivalences(bs, slow, eps, 2.0, fam, seed, {true, true, false});
      const auto rd = check_equivalences(bf, fast, eps, 2.0, fam, seed, {false, false, true});
      json e = {{"epsilon", eps}, {"ratios", json::array()}};
      for (const auto& r : rm.ratios) {
        e["ratios"].push_back(ratio_json(r));
        kmin_m = std::min(kmin_m, r.K), kmax_m = std::max(kmax_m, r.K);
      }
      for (const auto& r : rd.ratios) e["ratios"].push_back(ratio_json(r));
      double kd = 0;
      for (const auto& r : rd.ratios) kd = std::max(kd, r.K);
      kmin_d = std::min(kmin_d, kd), kmax_d = std::max(kmax_d, kd);
      per_eps.push_back(e);
    }
    bool rejected = false;
    try {
      check_equivalences(bf, fast, 0.1, 2.0, 4, seed, {false, true, false});
    } catch (const Error& e) {
      rejected = e.code() == ErrorCode::HypothesisViolation;
    }
    S.item("equivalences", std::isfinite(kmax_m) && std::isfinite(kmax_d), {{"per_epsilon", per_eps}});
    S.item("equivalence_hypotheses", rejected, json::object());
  }

  {
    const GridPtr g = make_grid_1d(128, L);
    std::mt19937_64 rng(seed);
    double worst = 1e300;
    const int n = quick ? 100 : 1000;
    for (int i = 0; i < n; ++i) {
      const ScalarField f = random_field(g, 2.0, rng);
      for (int k = 2; k <= 3; ++k)
        for (int j = 1; j < k; ++j) worst = std::min(worst, check_interpolation(f, j, k, 0.1));
    }
    S.item("interpolation", worst >= -1e-12, {{"min_slack", worst}, {"fields", n}});
  }

  {
    const GridPtr g = make_grid_1d(128, L);
    json probes = json::array();
    bool ok = true;
    for (ProbeKind k : {ProbeKind::Tame, ProbeKind::Commutator, ProbeKind::Composition})
      for (double s : {1.0, 1.5, 2.0, 3.0}) {
        const auto p = probe_inequality_constants(g, k, s, fam, seed);
        ok = ok && p.finite;
        probes.push_back({{"kind", to_string(k)}, {"s", s}, {"max_ratio", p.max_ratio}, {"drift", p.drift},
                          {"growth_flag", p.growth_flag}, {"finite", p.finite}});
      }
    S.item("inequality_probes", ok, {{"probes", probes}});
  }

  {
    json waves = json::array();
    bool ok = true;
    for (double eps : {0.1, 0.05})
      for (double xi : {1.0, 2.0, 4.0}) {
        const auto w = flat_bottom_wave_test(fast, eps, xi, quick ? 1 : 3);
        ok = ok && !w.ill_posed && w.relative_error <= 1e-6;
        waves.push_back({{"epsilon", eps}, {"xi", xi}, {"analytic", w.analytic_frequency},
                         {"measured", w.measured_frequency}, {"relative_error", w.relative_error},
                         {"amplitude_drift_per_period", w.amplitude_drift_per_period}});
      }
    S.item("dispersion", ok, {{"waves", waves}});
  }

  S.report["all_pass"] = S.all_pass;
  S.report["seed"] = seed;
  write_json((std::filesystem::path(out) / "verify_report.json").string(), S.report);
  std::printf("%s\n", S.all_pass ? "verification: all checks pass" : "verification: some checks FAIL");
  return S.all_pass ? 0 : 1;
}

CoefficientSet coeffs_for(const std::string& regime, const std::string& config, std::uint64_t seed) {
  if (!config.empty()) return load_config(config).coefficient_set();
  return coefficients_from_bbm(find_bbm_for_regime(regime_tag_from_string(regime), seed));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudospectral Boussinesq-over-bathymetry simulator"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "OpenMP thread count (0 = runtime default)");

  std::string config, out, eps_list;
  std::string verify_out = ".", disp_out = "dispersion.csv";
  std::uint64_t seed = 0;
  bool seed_set = false;

  auto* run = app.add_subcommand("run", "single run from a JSON config");
  run->add_option("--config", config, "config file")->required();
  run->add_option("--out", out, "output directory (overrides config)");
  run->add_option("--seed", seed, "seed (overrides config)")->each([&](const std::string&) { seed_set = true; });

  auto* sweep = app.add_subcommand("sweep", "epsilon sweep of one config");
  sweep->add_option("--config", config, "config file")->required();
  sweep->add_option("--out", out, "output directory");
  sweep->add_option("--eps", eps_list, "comma-separated epsilons (overrides config)");

  bool quick = false;
  auto* ver = app.add_subcommand("verify", "run the verification suite");
  ver->add_option("--out", verify_out, "report directory")->capture_default_str();
  ver->add_option("--seed", seed, "seed");
  ver->add_flag("--quick", quick, "smaller families");

  std::string regime = "fast1d";
  double epsilon = 0.1;
  std::vector<double> xis;
  bool measure = false;
  int n_grid = 128;
  auto* disp = app.add_subcommand("dispersion", "dispersion table (analytic and measured)");
  disp->add_option("--regime", regime, "regime whose searched parameters to use");
  disp->add_option("--config", config, "take coefficients from a config instead");
  disp->add_option("--epsilon", epsilon, "epsilon");
  disp->add_option("--xi", xis, "integer wavenumbers on a 2pi domain")->delimiter(',');
  disp->add_flag("--measure", measure, "integrate one mode per xi");
  disp->add_option("--n", n_grid, "grid size for measurements");
  disp->add_option("--out", disp_out, "output csv")->capture_default_str();
  disp->add_option("--seed", seed, "search seed");

  auto* reg = app.add_subcommand("regimes", "print searched parameters per regime");
  reg->add_option("--seed", seed, "search seed");

  CLI11_PARSE(app, argc, argv);
  if (threads > 0) omp_set_num_threads(threads);

  try {
    if (*run) {
      RunConfig c = load_config(config);
      if (!out.empty()) c.out = out;
      if (seed_set) c.seed = seed;
      const RunResult r = run_experiment(c);
      std::printf("exit=%d steps=%ld dt=%.6g G=%s\n", r.exit_code, r.steps, r.dt,
                  r.G ? format_double(*r.G).c_str() : "n/a");
      if (!r.message.empty()) std::fprintf(stderr, "%s\n", r.message.c_str());
      return r.exit_code;
    }
    if (*sweep) {
      RunConfig c = load_config(config);
      if (!out.empty()) c.out = out;
      std::vector<double> eps = c.epsilons;
      if (!eps_list.empty()) {
        eps.clear();
        std::stringstream ss(eps_list);
        std::string tok;
        while (std::getline(ss, tok, ',')) eps.push_back(std::stod(tok));
      }
      const SweepResult s = sweep_epsilon(c, eps);
      for (const auto& r : s.runs)
        std::printf("eps=%-8g exit=%d G=%s %s\n", r.epsilon, r.exit_code, r.G ? format_double(*r.G).c_str() : "n/a",
                    r.message.c_str());
      std::printf("flatness=%.6g\n", s.flatness);
      return s.all_ok ? kExitOk : kExitBlowup;
    }
    if (*ver) return run_verify(seed, quick, verify_out);
    if (*disp) {
      const CoefficientSet c = coeffs_for(regime, config, seed);
      if (xis.empty()) xis = {1, 2, 3, 4, 6, 8, 12, 16};
      std::vector<DispersionRow> rows;
      for (double xi : xis) {
        const DispersionSample d = dispersion_eigenvalues(c, epsilon, xi);
        DispersionRow row{xi, std::abs(d.lambda_plus), std::nullopt, d.ill_posed_mode};
        if (measure && !d.ill_posed_mode) row.measured = flat_bottom_wave_test(c, epsilon, xi, 3, n_grid).measured_frequency;
        rows.push_back(row);
      }
      write_dispersion_csv(disp_out, rows);
      return 0;
    }
    if (*reg) {
      for (RegimeTag t : {RegimeTag::Slow1d, RegimeTag::Slow2d, RegimeTag::Fast1d, RegimeTag::FullySymmetric}) {
        try {
          const BbmParams p = find_bbm_for_regime(t, seed);
          std::printf("%-16s %s\n", to_string(t).c_str(), to_json(p).dump().c_str());
          std::printf("%-16s %s\n", "", to_json(coefficients_from_bbm(p)).dump().c_str());
        } catch (const Error& e) {
          std::printf("%-16s infeasible: %s\n", to_string(t).c_str(), e.what());
        }
      }
      return 0;
    }
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  }
  return 0;
}
