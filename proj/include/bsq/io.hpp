#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bsq/energy.hpp"

namespace bsq {

inline constexpr int kCsvSchemaVersion = 1;

std::string format_double(double v);  // %.17g, round-trips exactly

// energy.csv (schema v1): header from energy_csv_columns(), absent values as empty cells
void write_energy_csv(const std::string& path, const std::vector<EnergyRecord>& records);

// final state snapshot: columns x[,y],V_x[,V_y],eta plus a JSON sidecar {dim, n, L}
void write_state_snapshot(const std::string& csv_path, const std::string& json_path, const State& s);

struct DispersionRow {
  double xi = 0.0;
  double analytic = 0.0;
  std::optional<double> measured;
  bool ill_posed = false;
};
// columns: xi,analytic_frequency,measured_frequency,ill_posed
void write_dispersion_csv(const std::string& path, const std::vector<DispersionRow>& rows);

void write_json(const std::string& path, const nlohmann::json& j);
void ensure_directory(const std::string& path);

}  // namespace bsq
