#include "isochrone/io.hpp"

#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "isochrone/errors.hpp"

namespace isochrone {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

void dump(const Json& j, int indent, int depth, std::string& out) {
  const std::string pad = indent > 0 ? "\n" + std::string((depth + 1) * indent, ' ') : "";
  const std::string close = indent > 0 ? "\n" + std::string(depth * indent, ' ') : "";
  if (j.is_object()) {
    if (j.empty()) { out += "{}"; return; }
    out += '{';
    bool first = true;
    for (const auto& [k, v] : j.items()) {
      if (!first) out += ',';
      first = false;
      out += pad + Json(k).dump() + (indent > 0 ? ": " : ":");
      dump(v, indent, depth + 1, out);
    }
    out += close + '}';
  } else if (j.is_array()) {
    if (j.empty()) { out += "[]"; return; }
    out += '[';
    for (size_t i = 0; i < j.size(); ++i) {
      if (i) out += ',';
      out += pad;
      dump(j[i], indent, depth + 1, out);
    }
    out += close + ']';
  } else if (j.is_number_float()) {
    const double v = j.get<double>();
    // JSON has no literal for non-finite values.
    if (!std::isfinite(v)) {
      out += Json(format_number(v)).dump();
    } else {
      std::string s = format_number(v);
      // Integral text parses back as an integer; keep -0.0 and the float type.
      if (s.find_first_of(".e") == std::string::npos) s += ".0";
      out += s;
    }
  } else {
    out += j.dump();
  }
}

double json_number(const Json& j, const std::string& key) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return kInf;
    if (s == "-inf") return -kInf;
    if (s == "nan") return std::nan("");
  }
  throw ParseError("'" + key + "' must be a number");
}

std::string json_string(const Json& j, const std::string& key) {
  if (!j.is_string()) throw ParseError("'" + key + "' must be a string");
  return j.get<std::string>();
}

Json number_json(double v) {
  return std::isfinite(v) ? Json(v) : Json(format_number(v));
}

}  // namespace

std::string dump_json(const Json& j, int indent) {
  std::string out;
  dump(j, indent, 0, out);
  return out;
}

Json to_json(const PotentialDescriptor& d) {
  Json j;
  j["family"] = d.family;
  for (const auto& [k, v] : d.params) j[k] = number_json(v);
  if (!d.coeffs.empty()) j["coeffs"] = d.coeffs;
  j["scale"] = number_json(d.scale);
  return j;
}

PotentialDescriptor descriptor_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("potential descriptor must be an object");
  PotentialDescriptor d;
  bool have_family = false;
  for (const auto& [k, v] : j.items()) {
    if (k == "family") {
      d.family = json_string(v, k);
      have_family = true;
    } else if (k == "scale") {
      d.scale = json_number(v, k);
    } else if (k == "coeffs") {
      if (!v.is_array()) throw ParseError("'coeffs' must be an array");
      for (const auto& c : v) {
        // Integers are accepted for convenience; they are exact either way.
        std::string s = c.is_string() ? c.get<std::string>()
                        : c.is_number_integer() ? std::to_string(c.get<long long>())
                                                : throw ParseError("coefficients must be strings");
        parse_rational(s);
        d.coeffs.push_back(s);
      }
    } else {
      d.params[k] = json_number(v, k);
    }
  }
  if (!have_family) throw ParseError("potential descriptor needs 'family'");
  return d;
}

Json to_json(const TruncSeries& s) {
  Json a = Json::array();
  for (const auto& c : s.coeffs()) a.push_back(format_rational(c));
  return a;
}

TruncSeries series_from_json(const Json& j, SeriesVar var) {
  if (!j.is_array() || j.empty()) throw ParseError("series must be a non-empty array");
  std::vector<Rational> c;
  for (const auto& v : j) c.push_back(parse_rational(json_string(v, "series")));
  return TruncSeries(std::move(c), var);
}

void Table::add(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw std::logic_error("table row width mismatch");
  rows.push_back(std::move(row));
}

namespace {

Json cell_json(const Table::Cell& c) {
  if (auto d = std::get_if<double>(&c)) return number_json(*d);
  if (auto i = std::get_if<long long>(&c)) return *i;
  return std::get<std::string>(c);
}

std::string cell_csv(const Table::Cell& c) {
  if (auto d = std::get_if<double>(&c)) return format_number(*d);
  if (auto i = std::get_if<long long>(&c)) return std::to_string(*i);
  const auto& s = std::get<std::string>(c);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + '"';
}

}  // namespace

Json to_json(const Table& t) {
  Json rows = Json::array();
  for (const auto& r : t.rows) {
    Json o = Json::object();
    for (size_t i = 0; i < r.size(); ++i) o[t.columns[i]] = cell_json(r[i]);
    rows.push_back(std::move(o));
  }
  return rows;
}

std::string to_csv(const Table& t) {
  std::string out;
  for (size_t i = 0; i < t.columns.size(); ++i) out += (i ? "," : "") + t.columns[i];
  out += '\n';
  for (const auto& r : t.rows) {
    for (size_t i = 0; i < r.size(); ++i) out += (i ? "," : "") + cell_csv(r[i]);
    out += '\n';
  }
  return out;
}

Json to_json(const RunConfig& c) {
  Json j;
  j["command"] = c.command;
  if (!c.action.empty()) j["action"] = c.action;
  if (c.potential) j["potential"] = to_json(*c.potential);
  if (!c.params.empty()) {
    Json p = Json::object();
    for (const auto& [k, v] : c.params) p[k] = number_json(v);
    j["params"] = p;
  }
  if (!c.options.empty()) j["options"] = c.options;
  if (!c.coeffs.empty()) j["coeffs"] = c.coeffs;
  if (!c.points.empty()) {
    Json p = Json::array();
    for (double v : c.points) p.push_back(number_json(v));
    j["points"] = p;
  }
  if (c.expect_isochronous) j["expect_isochronous"] = true;
  j["format"] = c.format;
  if (!c.output.empty()) j["output"] = c.output;
  return j;
}

RunConfig run_config_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("run config must be an object");
  RunConfig c;
  bool have_command = false;
  for (const auto& [k, v] : j.items()) {
    if (k == "command") {
      c.command = json_string(v, k);
      have_command = true;
    } else if (k == "action") {
      c.action = json_string(v, k);
    } else if (k == "potential") {
      c.potential = descriptor_from_json(v);
    } else if (k == "params") {
      if (!v.is_object()) throw ParseError("'params' must be an object");
      for (const auto& [pk, pv] : v.items()) c.params[pk] = json_number(pv, pk);
    } else if (k == "options") {
      if (!v.is_object()) throw ParseError("'options' must be an object");
      for (const auto& [ok, ov] : v.items()) c.options[ok] = json_string(ov, ok);
    } else if (k == "coeffs") {
      if (!v.is_array()) throw ParseError("'coeffs' must be an array");
      for (const auto& s : v) c.coeffs.push_back(json_string(s, k));
    } else if (k == "points") {
      if (!v.is_array()) throw ParseError("'points' must be an array");
      for (const auto& s : v) c.points.push_back(json_number(s, k));
    } else if (k == "expect_isochronous") {
      if (!v.is_boolean()) throw ParseError("'expect_isochronous' must be a boolean");
      c.expect_isochronous = v.get<bool>();
    } else if (k == "format") {
      c.format = json_string(v, k);
      if (c.format != "json" && c.format != "csv") throw ParseError("format must be json or csv");
    } else if (k == "output") {
      c.output = json_string(v, k);
    } else {
      throw ParseError("unknown run config key '" + k + "'");
    }
  }
  if (!have_command) throw ParseError("run config needs 'command'");
  return c;
}

const char* run_config_schema() {
  return R"({
  "$schema": "https://json-schema.org/draft/2020-12/schema",
  "title": "RunConfig",
  "type": "object",
  "additionalProperties": false,
  "required": ["command"],
  "properties": {
    "command": {"enum": ["families", "period", "certify", "involution", "series", "wkb", "oracle", "compare"]},
    "action": {"enum": ["odd-from-even", "g-from-f", "urabe", "p-from-f"]},
    "potential": {
      "type": "object",
      "required": ["family"],
      "properties": {
        "family": {"type": "string"},
        "coeffs": {"type": "array", "items": {"type": "string"}},
        "scale": {"type": "number"}
      },
      "additionalProperties": {"type": "number"}
    },
    "params": {"type": "object", "additionalProperties": {"type": "number"}},
    "options": {"type": "object", "additionalProperties": {"type": "string"}},
    "coeffs": {"type": "array", "items": {"type": "string"}},
    "points": {"type": "array", "items": {"type": "number"}},
    "expect_isochronous": {"type": "boolean"},
    "format": {"enum": ["json", "csv"]},
    "output": {"type": "string"}
  }
})";
}

}  // namespace isochrone
