#include "qcal/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "json.hpp"
#include "qcal/error.hpp"

namespace qcal {

using nlohmann::json;

std::string_view to_string(ModelKind kind) noexcept {
  switch (kind) {
    case ModelKind::Dimer: return "dimer";
    case ModelKind::SingleSpin: return "single_spin";
    case ModelKind::Tabulated: return "tabulated";
  }
  return "unknown";
}

std::string_view to_string(Computation computation) noexcept {
  switch (computation) {
    case Computation::Entropy: return "entropy";
    case Computation::Adiabatic: return "adiabatic";
    case Computation::ClassicalAdiabatic: return "classical_adiabatic";
    case Computation::Discord: return "discord";
    case Computation::Force: return "force";
    case Computation::Decompose: return "decompose";
  }
  return "unknown";
}

std::vector<double> SweepSpec::values() const {
  std::vector<double> v(static_cast<std::size_t>(points));
  for (int k = 0; k < points; ++k) {
    v[k] = k == points - 1 ? to : from + (to - from) * k / (points - 1);
  }
  return v;
}

std::vector<double> TemperatureGrid::values() const {
  if (points == 1) return {from};
  std::vector<double> v(static_cast<std::size_t>(points));
  for (int k = 0; k < points; ++k) {
    const double t = static_cast<double>(k) / (points - 1);
    if (k == points - 1) {
      v[k] = to;
    } else if (spacing == GridSpacing::Geometric) {
      v[k] = from * std::pow(to / from, t);
    } else {
      v[k] = from + (to - from) * t;
    }
  }
  return v;
}

namespace {

[[noreturn]] void invalid(const std::string& field, const std::string& reason) {
  throw Error(ErrorCode::ValidationError, field + ": " + reason, field);
}

// Strict view over one JSON object: unknown keys are rejected up front.
class ObjectReader {
 public:
  ObjectReader(const json& value, std::string path, std::initializer_list<const char*> allowed)
      : value_(value), path_(std::move(path)) {
    if (!value_.is_object()) invalid(path_.empty() ? "<root>" : path_, "must be a JSON object");
    for (const auto& [key, _] : value_.items()) {
      const bool known = std::any_of(allowed.begin(), allowed.end(),
                                     [&](const char* a) { return key == a; });
      if (!known) {
        const std::string field = qualify(key);
        throw Error(ErrorCode::UnknownKey, "unknown key \"" + field + "\"", field);
      }
    }
  }

  std::string qualify(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }
  bool has(const char* key) const { return value_.contains(key); }

  const json& required(const char* key) const {
    if (!has(key)) invalid(qualify(key), "is required");
    return value_.at(key);
  }

  double number(const char* key) const {
    const json& v = required(key);
    if (!v.is_number()) invalid(qualify(key), "must be a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) invalid(qualify(key), "must be finite");
    return d;
  }

  double number_or(const char* key, double fallback) const { return has(key) ? number(key) : fallback; }

  int integer(const char* key) const {
    const json& v = required(key);
    if (!v.is_number_integer()) invalid(qualify(key), "must be an integer");
    return v.get<int>();
  }

  std::string string(const char* key) const {
    const json& v = required(key);
    if (!v.is_string()) invalid(qualify(key), "must be a string");
    return v.get<std::string>();
  }

  bool boolean_or(const char* key, bool fallback) const {
    if (!has(key)) return fallback;
    const json& v = value_.at(key);
    if (!v.is_boolean()) invalid(qualify(key), "must be true or false");
    return v.get<bool>();
  }

 private:
  const json& value_;
  std::string path_;
};

std::vector<double> number_array(const json& v, const std::string& field) {
  if (!v.is_array()) invalid(field, "must be an array of numbers");
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) invalid(field, "must be an array of numbers");
    const double d = x.get<double>();
    if (!std::isfinite(d)) invalid(field, "must contain finite numbers");
    out.push_back(d);
  }
  return out;
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i < text.size() && i + 1 < byte; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

Computation parse_computation(const std::string& name, const std::string& field) {
  for (auto c : {Computation::Entropy, Computation::Adiabatic, Computation::ClassicalAdiabatic,
                 Computation::Discord, Computation::Force, Computation::Decompose}) {
    if (name == to_string(c)) return c;
  }
  invalid(field, "unknown computation \"" + name + "\"");
}

}  // namespace

Scenario parse_scenario(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, column] = line_column(text, e.byte);
    throw Error(ErrorCode::SyntaxError, "line " + std::to_string(line) + ", column " +
                                            std::to_string(column) + ": " + e.what());
  }

  ObjectReader top(root, "",
                   {"model", "parameter", "sweep", "temperatures", "computations", "lattice",
                    "units", "output"});
  Scenario s;

  // Units come first: they decide how field values are read.
  bool field_in_tesla = false;
  if (top.has("units")) {
    ObjectReader units(root.at("units"), "units", {"g", "field_in_tesla"});
    s.units.g = units.number_or("g", 2.0);
    if (!(s.units.g > 0.0)) invalid("units.g", "must be > 0");
    field_in_tesla = units.boolean_or("field_in_tesla", false);
  }
  auto field_value = [&](double v) { return field_in_tesla ? s.units.field_to_kelvin(v) : v; };

  {
    const json& model = top.required("model");
    ObjectReader probe(model, "model", {"type", "J", "b", "lambda", "energies"});
    const std::string type = probe.string("type");
    if (type == "dimer") {
      ObjectReader m(model, "model", {"type", "J", "b"});
      s.model.kind = ModelKind::Dimer;
      s.model.J = m.number("J");
      s.model.b = field_value(m.number_or("b", 0.0));
    } else if (type == "single_spin") {
      ObjectReader m(model, "model", {"type", "b"});
      s.model.kind = ModelKind::SingleSpin;
      s.model.b = field_value(m.number_or("b", 0.0));
    } else if (type == "tabulated") {
      ObjectReader m(model, "model", {"type", "lambda", "energies"});
      s.model.kind = ModelKind::Tabulated;
      s.model.table.lambda_grid = number_array(m.required("lambda"), "model.lambda");
      const json& rows = m.required("energies");
      if (!rows.is_array()) invalid("model.energies", "must be an array of arrays");
      for (const auto& row : rows) s.model.table.energies.push_back(number_array(row, "model.energies"));
      const auto& grid = s.model.table.lambda_grid;
      if (grid.size() < 3) invalid("model.lambda", "needs at least 3 grid points");
      for (std::size_t k = 1; k < grid.size(); ++k)
        if (!(grid[k] > grid[k - 1])) invalid("model.lambda", "must be strictly increasing");
      if (s.model.table.energies.size() != grid.size())
        invalid("model.energies", "needs one row per lambda grid point");
      for (const auto& row : s.model.table.energies)
        if (row.empty() || row.size() != s.model.table.energies.front().size())
          invalid("model.energies", "rows must be non-empty and of equal length");
    } else {
      invalid("model.type", "must be \"dimer\", \"single_spin\" or \"tabulated\"");
    }
  }

  if (top.has("parameter")) {
    s.parameter = top.string("parameter");
  } else {
    s.parameter = s.model.kind == ModelKind::Dimer        ? "J"
                  : s.model.kind == ModelKind::SingleSpin ? "b"
                                                          : "tabulated";
  }
  switch (s.model.kind) {
    case ModelKind::Dimer:
      if (s.parameter != "J" && s.parameter != "b") invalid("parameter", "must be \"J\" or \"b\"");
      break;
    case ModelKind::SingleSpin:
      if (s.parameter != "b") invalid("parameter", "single_spin supports only \"b\"");
      break;
    case ModelKind::Tabulated:
      if (s.parameter != "tabulated") invalid("parameter", "tabulated models use \"tabulated\"");
      break;
  }

  {
    ObjectReader sweep(top.required("sweep"), "sweep", {"from", "to", "points"});
    const bool is_field = s.parameter == "b";
    s.sweep.from = is_field ? field_value(sweep.number("from")) : sweep.number("from");
    s.sweep.to = is_field ? field_value(sweep.number("to")) : sweep.number("to");
    s.sweep.points = sweep.integer("points");
    if (s.sweep.points < 2) invalid("sweep.points", "must be >= 2");
    if (s.model.kind == ModelKind::Tabulated) {
      const auto& g = s.model.table.lambda_grid;
      auto inside = [&](double x) { return x >= g.front() && x <= g.back(); };
      if (!inside(s.sweep.from) || !inside(s.sweep.to))
        invalid("sweep", "must lie inside the tabulated lambda range");
    }
  }

  {
    ObjectReader temps(top.required("temperatures"), "temperatures",
                       {"from", "to", "points", "spacing"});
    s.temperatures.from = temps.number("from");
    if (!(s.temperatures.from > 0.0)) invalid("temperatures.from", "must be > 0");
    s.temperatures.to = temps.number_or("to", s.temperatures.from);
    if (s.temperatures.to < s.temperatures.from) invalid("temperatures.to", "must be >= temperatures.from");
    s.temperatures.points = temps.integer("points");
    if (s.temperatures.points < 1) invalid("temperatures.points", "must be >= 1");
    if (temps.has("spacing")) {
      const std::string spacing = temps.string("spacing");
      if (spacing == "linear") {
        s.temperatures.spacing = GridSpacing::Linear;
      } else if (spacing == "geometric") {
        s.temperatures.spacing = GridSpacing::Geometric;
      } else {
        invalid("temperatures.spacing", "must be \"linear\" or \"geometric\"");
      }
    }
  }

  if (top.has("computations")) {
    const json& list = root.at("computations");
    if (!list.is_array()) invalid("computations", "must be an array of strings");
    for (const auto& item : list) {
      if (!item.is_string()) invalid("computations", "must be an array of strings");
      const Computation c = parse_computation(item.get<std::string>(), "computations");
      if (std::find(s.computations.begin(), s.computations.end(), c) != s.computations.end())
        invalid("computations", "duplicate entry \"" + item.get<std::string>() + "\"");
      s.computations.push_back(c);
    }
  }
  for (Computation c : s.computations) {
    if (c == Computation::ClassicalAdiabatic && s.parameter != "b")
      invalid("computations", "classical_adiabatic needs parameter \"b\"");
    if (c == Computation::Discord && s.model.kind != ModelKind::Dimer)
      invalid("computations", "discord needs a dimer model");
  }

  if (top.has("lattice")) {
    ObjectReader lattice(root.at("lattice"), "lattice", {"a0", "a1", "a3"});
    LatticeHeatSpec spec{lattice.number_or("a0", 0.0), lattice.number_or("a1", 0.0),
                         lattice.number_or("a3", 0.0)};
    if (spec.a0 < 0.0 || spec.a1 < 0.0 || spec.a3 < 0.0)
      invalid("lattice", "coefficients must be >= 0");
    s.lattice = spec;
  }

  {
    ObjectReader output(top.required("output"), "output", {"csv", "svg"});
    s.output.csv = output.string("csv");
    if (s.output.csv.empty()) invalid("output.csv", "must be a non-empty path");
    if (output.has("svg")) {
      s.output.svg = output.string("svg");
      if (s.output.svg->empty()) invalid("output.svg", "must be a non-empty path");
    }
  }
  return s;
}

std::string serialize_scenario(const Scenario& s) {
  nlohmann::ordered_json root;
  nlohmann::ordered_json model;
  model["type"] = std::string(to_string(s.model.kind));
  switch (s.model.kind) {
    case ModelKind::Dimer:
      model["J"] = s.model.J;
      model["b"] = s.model.b;
      break;
    case ModelKind::SingleSpin:
      model["b"] = s.model.b;
      break;
    case ModelKind::Tabulated:
      model["lambda"] = s.model.table.lambda_grid;
      model["energies"] = s.model.table.energies;
      break;
  }
  root["model"] = model;
  root["parameter"] = s.parameter;
  root["sweep"] = {{"from", s.sweep.from}, {"to", s.sweep.to}, {"points", s.sweep.points}};
  root["temperatures"] = {
      {"from", s.temperatures.from},
      {"to", s.temperatures.to},
      {"points", s.temperatures.points},
      {"spacing", s.temperatures.spacing == GridSpacing::Linear ? "linear" : "geometric"}};
  nlohmann::ordered_json comps = nlohmann::ordered_json::array();
  for (Computation c : s.computations) comps.push_back(std::string(to_string(c)));
  root["computations"] = comps;
  if (s.lattice) root["lattice"] = {{"a0", s.lattice->a0}, {"a1", s.lattice->a1}, {"a3", s.lattice->a3}};
  root["units"] = {{"g", s.units.g}, {"field_in_tesla", false}};
  nlohmann::ordered_json output;
  output["csv"] = s.output.csv;
  if (s.output.svg) output["svg"] = *s.output.svg;
  root["output"] = output;
  return root.dump(2) + "\n";
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open \"" + path + "\"", path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Scenario load_scenario_file(const std::string& path) { return parse_scenario(read_text_file(path)); }

ParamHamiltonian build_model(const Scenario& s) {
  switch (s.model.kind) {
    case ModelKind::Dimer: return build_dimer(s.model.J, s.model.b, s.parameter);
    case ModelKind::SingleSpin: return build_single_spin_zeeman(s.model.b);
    case ModelKind::Tabulated: return build_tabulated(s.model.table);
  }
  throw Error(ErrorCode::ValidationError, "unknown model kind", "model.type");
}

double ExchangeTable::lookup(double pressure) const {
  if (!(pressure >= pressure_gpa.front() && pressure <= pressure_gpa.back())) {
    throw Error(ErrorCode::OutOfRange, "pressure " + std::to_string(pressure) +
                                           " GPa outside the exchange table");
  }
  auto it = std::lower_bound(pressure_gpa.begin(), pressure_gpa.end(), pressure);
  const std::size_t k = static_cast<std::size_t>(it - pressure_gpa.begin());
  if (pressure_gpa[k] == pressure) return J_kelvin[k];
  const double w = (pressure - pressure_gpa[k - 1]) / (pressure_gpa[k] - pressure_gpa[k - 1]);
  return J_kelvin[k - 1] + w * (J_kelvin[k] - J_kelvin[k - 1]);
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

bool parse_double(std::string_view text, double& out) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc() && ptr == end && std::isfinite(out);
}

}  // namespace

ExchangeTable load_exchange_table(std::string_view csv) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= csv.size()) {
    const std::size_t end = csv.find('\n', start);
    const std::size_t stop = end == std::string_view::npos ? csv.size() : end;
    lines.push_back(trim(csv.substr(start, stop - start)));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();

  if (lines.empty() || lines.front() != "pressure_gpa,J_kelvin") {
    throw Error(ErrorCode::HeaderMismatch, "expected header \"pressure_gpa,J_kelvin\"");
  }
  ExchangeTable table;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::string row = std::to_string(i);
    const auto line = lines[i];
    const auto comma = line.find(',');
    double p = 0.0, j = 0.0;
    if (comma == std::string_view::npos || line.find(',', comma + 1) != std::string_view::npos ||
        !parse_double(line.substr(0, comma), p) || !parse_double(line.substr(comma + 1), j)) {
      throw Error(ErrorCode::ParseError, "row " + row + ": expected two finite numbers", "row " + row);
    }
    if (!table.pressure_gpa.empty() && !(p > table.pressure_gpa.back())) {
      throw Error(ErrorCode::NonMonotonePressure,
                  "row " + row + ": pressure must be strictly increasing", "row " + row);
    }
    table.pressure_gpa.push_back(p);
    table.J_kelvin.push_back(j);
  }
  if (table.size() < 2) {
    throw Error(ErrorCode::ValidationError, "exchange table needs at least 2 rows", "exchange_table");
  }
  return table;
}

ExchangeTable load_exchange_table_file(const std::string& path) {
  return load_exchange_table(read_text_file(path));
}

}  // namespace qcal
