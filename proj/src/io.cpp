#include "bsq/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "bsq/errors.hpp"

namespace bsq {

namespace {

std::ofstream open_out(const std::string& path) {
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) ensure_directory(parent.string());
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::ConfigInvalid, "cannot write '" + path + "'");
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void ensure_directory(const std::string& path) {
  std::error_code ec;
  std::filesystem::create_directories(path, ec);
  if (ec) throw Error(ErrorCode::ConfigInvalid, "cannot create directory '" + path + "': " + ec.message());
}

void write_energy_csv(const std::string& path, const std::vector<EnergyRecord>& records) {
  std::ofstream out = open_out(path);
  const auto& cols = energy_csv_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
  for (const auto& r : records) {
    const auto vals = energy_csv_values(r);
    for (std::size_t i = 0; i < vals.size(); ++i) {
      if (i) out << ',';
      if (vals[i]) out << format_double(*vals[i]);
    }
    out << '\n';
  }
}

void write_state_snapshot(const std::string& csv_path, const std::string& json_path, const State& s) {
  const Grid& g = *s.eta.grid;
  std::ofstream out = open_out(csv_path);
  const bool two = g.dim() == 2;
  out << (two ? "x,y,V_x,V_y,eta\n" : "x,V_x,eta\n");
  for (int iy = 0; iy < g.n(1); ++iy) {
    for (int ix = 0; ix < g.n(0); ++ix) {
      const int i = g.index(ix, iy);
      out << format_double(g.coord(0, ix));
      if (two) out << ',' << format_double(g.coord(1, iy));
      out << ',' << format_double(s.V[0][i]);
      if (two) out << ',' << format_double(s.V[1][i]);
      out << ',' << format_double(s.eta[i]) << '\n';
    }
  }
  nlohmann::json j = {{"dim", g.dim()}, {"t", s.t}};
  j["n"] = two ? nlohmann::json::array({g.n(0), g.n(1)}) : nlohmann::json::array({g.n(0)});
  j["L"] = two ? nlohmann::json::array({g.length(0), g.length(1)}) : nlohmann::json::array({g.length(0)});
  write_json(json_path, j);
}

void write_dispersion_csv(const std::string& path, const std::vector<DispersionRow>& rows) {
  std::ofstream out = open_out(path);
  out << "xi,analytic_frequency,measured_frequency,ill_posed\n";
  for (const auto& r : rows) {
    out << format_double(r.xi) << ',' << format_double(r.analytic) << ',';
    if (r.measured) out << format_double(*r.measured);
    out << ',' << (r.ill_posed ? 1 : 0) << '\n';
  }
}

void write_json(const std::string& path, const nlohmann::json& j) {
  std::ofstream out = open_out(path);
  out << j.dump(2) << '\n';
}

}  // namespace bsq
