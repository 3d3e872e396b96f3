#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "isochrone/potential.hpp"
#include "isochrone/rational_series.hpp"

namespace isochrone {

using Json = nlohmann::ordered_json;

// Fixed 17 significant digits; non-finite values become "nan", "inf", "-inf".
std::string format_number(double v);

// JSON text with every floating value printed by format_number.
std::string dump_json(const Json& j, int indent = 2);

// {"family": id, <param>: value, ..., "coeffs": [...], "scale": c}.
Json to_json(const PotentialDescriptor& d);
PotentialDescriptor descriptor_from_json(const Json& j);

// Exact coefficients as "p/q" strings.
Json to_json(const TruncSeries& s);
TruncSeries series_from_json(const Json& j, SeriesVar var = SeriesVar::x);

// Output table shared by the JSON and CSV encoders, so both carry the same
// numbers.
struct Table {
  using Cell = std::variant<double, long long, std::string>;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  void add(std::vector<Cell> row);
};

Json to_json(const Table& t);        // array of row objects
std::string to_csv(const Table& t);  // header row, LF endings

struct RunConfig {
  std::string command;
  std::string action;  // series recursion name; empty otherwise
  std::optional<PotentialDescriptor> potential;
  std::map<std::string, double> params;       // tolerances, grids, hbar, order, ...
  std::map<std::string, std::string> options; // criterion, route, spacing
  std::vector<std::string> coeffs;            // exact inputs for series runs
  std::vector<double> points;                 // explicit sample points
  bool expect_isochronous = false;
  std::string format = "json";
  std::string output;  // empty means stdout

  bool operator==(const RunConfig&) const = default;
};

Json to_json(const RunConfig& c);
// Throws ParseError on unknown keys or malformed values.
RunConfig run_config_from_json(const Json& j);

// JSON schema of RunConfig, printed on usage errors.
const char* run_config_schema();

}  // namespace isochrone
