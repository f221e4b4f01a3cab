#pragma once

// Scenario files (JSON) and exchange tables (CSV).
//
// Scenario schema; every key not listed is rejected:
//
//   {
//     "model": {"type": "dimer", "J": 1.0, "b": 0.0}
//            | {"type": "single_spin", "b": 1.0}
//            | {"type": "tabulated", "lambda": [...], "energies": [[...], ...]},
//     "parameter": "J" | "b" | "tabulated",
//     "sweep": {"from": 0.5, "to": 1.5, "points": 2},
//     "temperatures": {"from": 0.2, "to": 5.0, "points": 25,
//                      "spacing": "linear" | "geometric"},
//     "computations": ["entropy", "adiabatic", "classical_adiabatic",
//                      "discord", "force", "decompose"],
//     "lattice": {"a0": 0.0, "a1": 0.0, "a3": 0.0},
//     "units": {"g": 2.0, "field_in_tesla": false},
//     "output": {"csv": "out.csv", "svg": "out.svg"}
//   }
//
// With "field_in_tesla" the model's b and a b-sweep are read in tesla and
// converted once, here, to kelvin. The parsed Scenario holds kelvin only.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qcal/caloric.hpp"
#include "qcal/models.hpp"

namespace qcal {

enum class ModelKind { Dimer, SingleSpin, Tabulated };
enum class Computation { Entropy, Adiabatic, ClassicalAdiabatic, Discord, Force, Decompose };
enum class GridSpacing { Linear, Geometric };

std::string_view to_string(ModelKind kind) noexcept;
std::string_view to_string(Computation computation) noexcept;

struct ModelSpec {
  ModelKind kind = ModelKind::Dimer;
  double J = 0.0;
  double b = 0.0;
  SpectrumTable table;  // tabulated only

  friend bool operator==(const ModelSpec&, const ModelSpec&) = default;
};

struct SweepSpec {
  double from = 0.0;
  double to = 0.0;
  int points = 2;

  std::vector<double> values() const;
  friend bool operator==(const SweepSpec&, const SweepSpec&) = default;
};

struct TemperatureGrid {
  double from = 1.0;
  double to = 1.0;
  int points = 1;
  GridSpacing spacing = GridSpacing::Linear;

  std::vector<double> values() const;
  friend bool operator==(const TemperatureGrid&, const TemperatureGrid&) = default;
};

struct OutputSpec {
  std::string csv;
  std::optional<std::string> svg;

  friend bool operator==(const OutputSpec&, const OutputSpec&) = default;
};

struct Scenario {
  ModelSpec model;
  std::string parameter = "J";
  SweepSpec sweep;
  TemperatureGrid temperatures;
  std::vector<Computation> computations;
  std::optional<LatticeHeatSpec> lattice;
  UnitSystem units;
  OutputSpec output;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Throws Error with SyntaxError (message carries line/column), ValidationError
/// (field() names the key path) or UnknownKey.
Scenario parse_scenario(std::string_view text);

/// JSON text in kelvin that parse_scenario maps back to an equal Scenario.
std::string serialize_scenario(const Scenario& scenario);

Scenario load_scenario_file(const std::string& path);

ParamHamiltonian build_model(const Scenario& scenario);

struct ExchangeTable {
  std::vector<double> pressure_gpa;
  std::vector<double> J_kelvin;

  std::size_t size() const noexcept { return pressure_gpa.size(); }
  /// Linear interpolation; Error(OutOfRange) outside the table.
  double lookup(double pressure_gpa) const;
};

/// CSV with header `pressure_gpa,J_kelvin`.
ExchangeTable load_exchange_table(std::string_view csv);
ExchangeTable load_exchange_table_file(const std::string& path);

std::string read_text_file(const std::string& path);

}  // namespace qcal
