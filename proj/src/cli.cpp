#include "isochrone/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"

#include "isochrone/errors.hpp"
#include "isochrone/parallel.hpp"
#include "isochrone/period.hpp"
#include "isochrone/schrodinger.hpp"
#include "isochrone/wkb.hpp"

namespace isochrone::cli {

namespace {

struct FamilyInfo {
  const char* id;
  const char* defaults;
  const char* description;
  const char* isochronous;
};

const FamilyInfo kFamilies[] = {
    {"harmonic", "", "x^2/2", "yes"},
    {"isotonic", "alpha=1", "(1/8 alpha^2)(alpha x + 1 - 1/(alpha x + 1))^2, wall at x = -1/alpha",
     "yes"},
    {"chalykh-veselov", "alpha=1", "isotonic form under its alternative name", "yes"},
    {"three-param", "a=0.1 b=1 c=1", "P(G) = 2aG/(sqrt(1 + bG) + 1), rescaled by c", "yes"},
    {"family1", "c=0.3 gmax=100", "P(G) = c - c/(1 + 2G)", "yes"},
    {"family2", "a=0.3 gmax=100", "P(G) = 2aG/sqrt(1 + 2a^2 G)", "yes"},
    {"family3", "a=0.5 gmax=100", "P(G) = (2G - 2aG/(s + 1))/s, s = sqrt(1 + 2G)", "yes"},
    {"family4", "alpha=0.5 beta=1 gmax=100",
     "P(G) = alpha - alpha(1 + 4 beta^2 G)/sqrt(1 + 2 beta^2 G)", "yes"},
    {"p-series", "gmax=10", "P(G) from exact coefficients p0, p1, ...", "yes"},
    {"series", "", "g(x) = x + a2 x^2 + a3 x^3 + ... from exact coefficients", "depends"},
    {"quartic", "", "x^2/2 + x^4/4", "no"},
};

double param(const RunConfig& c, const std::string& key, double fallback) {
  auto it = c.params.find(key);
  return it == c.params.end() ? fallback : it->second;
}

int int_param(const RunConfig& c, const std::string& key, int fallback) {
  const double v = param(c, key, fallback);
  if (v != std::floor(v) || std::abs(v) > 1e9) throw ParameterDomainError(key + " must be an integer");
  return static_cast<int>(v);
}

std::string option(const RunConfig& c, const std::string& key, const std::string& fallback) {
  auto it = c.options.find(key);
  return it == c.options.end() ? fallback : it->second;
}

Potential potential(const RunConfig& c) {
  if (!c.potential) throw ParameterDomainError(c.command + " needs a potential (--family)");
  return make_potential(*c.potential);
}

std::vector<Rational> exact_coeffs(const RunConfig& c) {
  if (c.coeffs.empty()) throw ParameterDomainError("series needs --coeffs");
  std::vector<Rational> r;
  for (const auto& s : c.coeffs) r.push_back(parse_rational(s));
  return r;
}

Output families() {
  Output out;
  out.table.columns = {"id", "defaults", "description", "isochronous"};
  for (const auto& f : kFamilies) out.table.add({f.id, f.defaults, f.description, f.isochronous});
  return out;
}

Output period_table(const RunConfig& c) {
  const Potential p = potential(c);
  const int n = int_param(c, "n", 16);
  const double lo = param(c, "emin", 0.05), hi = param(c, "emax", 2.0);
  if (n < 1 || !(lo > 0) || !(hi >= lo)) throw ParameterDomainError("need n >= 1 and 0 < emin <= emax");
  const std::string spacing = option(c, "spacing", "linear");
  std::vector<double> E;
  if (spacing == "log") {
    E = n == 1 ? std::vector<double>{lo} : log_grid(lo, hi, n);
  } else if (spacing == "linear") {
    for (int i = 0; i < n; ++i) E.push_back(n == 1 ? lo : lo + (hi - lo) * i / (n - 1));
  } else {
    throw ParameterDomainError("spacing must be linear or log");
  }
  const bool ode = option(c, "ode", "false") == "true";
  std::vector<std::vector<Table::Cell>> rows(E.size());
  parallel_for(E.size(), [&](size_t i) {
    rows[i] = {E[i], period(p, E[i]), period_derivative(p, E[i])};
    if (ode) rows[i].push_back(ode_period_oracle(p, E[i]));
  });
  Output out;
  out.table.columns = {"E", "T", "dT_dE"};
  if (ode) out.table.columns.push_back("T_ode");
  for (auto& r : rows) out.table.add(std::move(r));
  out.meta["potential"] = p.label();
  return out;
}

Output certify_table(const RunConfig& c) {
  const Potential p = potential(c);
  const double tol = param(c, "tol", 1e-8);
  const std::string which = option(c, "criterion", "all");
  const auto criteria = which == "all" ? all_criteria() : std::vector<Criterion>{parse_criterion(which)};
  Output out;
  out.table.columns = {"criterion", "max_residual", "verdict", "tol", "points", "exact"};
  Json reports = Json::array();
  bool failed = false;
  for (Criterion cr : criteria) {
    const CertReport r = c.points.empty() ? certify(p, cr, tol) : certify(p, cr, c.points, tol);
    failed |= r.verdict == Verdict::NotIsochronous;
    out.table.add({to_string(cr), r.max_residual, to_string(r.verdict), r.tol,
                   static_cast<long long>(r.grid.size()), r.exact ? "true" : "false"});
    Json j;
    j["criterion"] = to_string(cr);
    j["verdict"] = to_string(r.verdict);
    j["max_residual"] = r.max_residual;
    j["tol"] = r.tol;
    j["exact"] = r.exact;
    j["grid"] = r.grid;
    j["residuals"] = r.residuals;
    reports.push_back(j);
  }
  out.meta["potential"] = p.label();
  out.meta["reports"] = reports;
  if (failed && c.expect_isochronous) out.exit_code = kExitNotIsochronous;
  return out;
}

Output involution_table(const RunConfig& c) {
  const Potential p = potential(c);
  if (c.points.empty()) throw ParameterDomainError("involution needs --x points");
  Output out;
  out.table.columns = {"x", "A", "landau_residual"};
  for (double x : c.points) {
    const double A = involution(p, x);
    const double r = std::abs(x - A) - 2.0 * std::sqrt(2.0 * p.G(x));
    out.table.add({x, A, r});
  }
  out.meta["potential"] = p.label();
  return out;
}

Output series_table(const RunConfig& c) {
  const auto in = exact_coeffs(c);
  Output out;
  Json result = Json::object();
  out.table.columns = {"name", "value"};
  auto emit = [&](const std::string& name, const Rational& v) {
    result[name] = format_rational(v);
    out.table.add({name, format_rational(v)});
  };
  if (c.action == "odd-from-even") {
    const auto odd = odd_from_even(in);
    for (size_t k = 0; k < odd.size(); ++k) emit("a" + std::to_string(2 * k + 3), odd[k]);
  } else if (c.action == "g-from-f") {
    const int order = int_param(c, "order", static_cast<int>(in.size()) + 2);
    const TruncSeries G = g_from_f(in, order);
    for (int k = 2; k <= G.order(); ++k) emit("G" + std::to_string(k), G[k]);
  } else if (c.action == "urabe") {
    const TruncSeries G = potential_from_g_coeffs(in, static_cast<int>(in.size()) + 2);
    const UrabeResult u = urabe_h(G);
    for (int k = 1; k <= u.h.order(); ++k) emit("h" + std::to_string(k), u.h[k]);
    out.meta["odd"] = u.odd;
  } else if (c.action == "p-from-f") {
    const TruncSeries P = p_from_f(TruncSeries(in, SeriesVar::G));
    for (int k = 0; k <= P.order(); ++k) emit("p" + std::to_string(k), P[k]);
  } else {
    throw ParseError("unknown series action '" + c.action + "'");
  }
  out.meta["result"] = result;
  return out;
}

Json gap_json(const GapStats& g) {
  Json j;
  j["mean_gap"] = g.mean_gap;
  j["max_deviation"] = g.max_deviation;
  j["increasing"] = g.increasing;
  j["gaps"] = g.gaps;
  return j;
}

SpectrumReport wkb_run(const RunConfig& c, const Potential& p) {
  const int levels = int_param(c, "levels", 6);
  if (levels < 1) throw ParameterDomainError("levels must be >= 1");
  return wkb_spectrum(p, param(c, "hbar", 1.0), int_param(c, "order", 4), levels - 1,
                      parse_route(option(c, "route", "auto")));
}

OracleSpectrum oracle_run(const RunConfig& c, const Potential& p) {
  std::optional<Interval> iv;
  if (c.params.count("xlo") || c.params.count("xhi")) {
    if (!c.params.count("xlo") || !c.params.count("xhi"))
      throw ParameterDomainError("give both xlo and xhi");
    iv = Interval{c.params.at("xlo"), c.params.at("xhi")};
  }
  return oracle_spectrum(p, param(c, "hbar", 1.0), int_param(c, "levels", 6),
                         int_param(c, "grid", 4000), option(c, "richardson", "true") == "true", iv);
}

Output wkb_table(const RunConfig& c) {
  const Potential p = potential(c);
  const SpectrumReport s = wkb_run(c, p);
  Output out;
  out.table.columns = {"n", "E"};
  for (const auto& [n, e] : s.levels) out.table.add({static_cast<long long>(n), e});
  out.meta["potential"] = p.label();
  out.meta["hbar"] = s.hbar;
  out.meta["order"] = s.order;
  out.meta["route"] = to_string(s.route);
  out.meta["gaps"] = gap_json(s.gaps);
  return out;
}

Output oracle_table(const RunConfig& c) {
  const Potential p = potential(c);
  const OracleSpectrum s = oracle_run(c, p);
  Output out;
  out.table.columns = {"n", "E", "E_coarse", "E_fine"};
  for (size_t n = 0; n < s.levels.size(); ++n)
    out.table.add({static_cast<long long>(n), s.levels[n], s.coarse[n],
                   s.extrapolated ? Table::Cell{s.fine[n]} : Table::Cell{std::nan("")}});
  out.meta["potential"] = p.label();
  out.meta["hbar"] = s.hbar;
  out.meta["x_lo"] = s.x_lo;
  out.meta["x_hi"] = s.x_hi;
  out.meta["grid"] = s.N;
  out.meta["richardson"] = s.extrapolated;
  out.meta["h2_coefficient"] = s.h2_coefficient;
  out.meta["gaps"] = gap_json(spacing_report(s.levels, s.hbar));
  return out;
}

Output compare_table(const RunConfig& c) {
  const Potential p = potential(c);
  const SpectrumReport w = wkb_run(c, p);
  const OracleSpectrum o = oracle_run(c, p);
  Output out;
  out.table.columns = {"n", "E_wkb", "E_oracle", "difference"};
  double worst = 0.0;
  for (const auto& [n, e] : w.levels) {
    const double d = e - o.levels[n];
    worst = std::max(worst, std::abs(d));
    out.table.add({static_cast<long long>(n), e, o.levels[n], d});
  }
  out.meta["potential"] = p.label();
  out.meta["order"] = w.order;
  out.meta["max_abs_difference"] = worst;
  return out;
}

}  // namespace

Output execute(const RunConfig& c) {
  if (c.command == "families") return families();
  if (c.command == "period") return period_table(c);
  if (c.command == "certify") return certify_table(c);
  if (c.command == "involution") return involution_table(c);
  if (c.command == "series") return series_table(c);
  if (c.command == "wkb") return wkb_table(c);
  if (c.command == "oracle") return oracle_table(c);
  if (c.command == "compare") return compare_table(c);
  throw ParseError("unknown command '" + c.command + "'");
}

std::string render(const RunConfig& c, const Output& out) {
  if (c.format == "csv") return to_csv(out.table);
  Json j;
  j["config"] = to_json(c);
  for (const auto& [k, v] : out.meta.items()) j[k] = v;
  j["rows"] = to_json(out.table);
  return dump_json(j) + "\n";
}

namespace {

struct Parsed {
  RunConfig config;
  std::string config_file;
  bool dump_config = false;
};

void parse(const std::vector<std::string>& args, Parsed& parsed, CLI::App& app) {
  RunConfig& cfg = parsed.config;
  app.require_subcommand(0, 1);
  app.fallthrough();
  app.add_option("--config", parsed.config_file, "run a RunConfig JSON file");
  app.add_flag("--dump-config", parsed.dump_config, "print the RunConfig instead of running it");
  app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--output", cfg.output, "output path (default stdout)");

  auto num = [&](CLI::App* s, const std::string& name, const std::string& desc) {
    s->add_option_function<double>("--" + name, [&cfg, name](double v) { cfg.params[name] = v; }, desc);
  };
  auto opt = [&](CLI::App* s, const std::string& name, const std::string& desc,
                 std::vector<std::string> allowed) {
    auto* o = s->add_option_function<std::string>(
        "--" + name, [&cfg, name](const std::string& v) { cfg.options[name] = v; }, desc);
    if (!allowed.empty()) o->check(CLI::IsMember(allowed));
  };
  auto pot = [&](CLI::App* s) {
    s->add_option_function<std::string>(
        "--family", [&cfg](const std::string& f) {
          if (!cfg.potential) cfg.potential.emplace();
          cfg.potential->family = f;
        }, "potential family id (see `families`)")->required();
    for (const char* k : {"alpha", "a", "b", "c", "beta", "gmax"}) {
      s->add_option_function<double>(std::string("--") + k, [&cfg, key = std::string(k)](double v) {
        if (!cfg.potential) cfg.potential.emplace();
        cfg.potential->params[key] = v;
      }, std::string("family parameter ") + k);
    }
    s->add_option_function<double>("--scale", [&cfg](double v) {
      if (!cfg.potential) cfg.potential.emplace();
      cfg.potential->scale = v;
    }, "rescale to G(cx)/c^2");
    s->add_option_function<std::vector<std::string>>("--coeffs", [&cfg](const std::vector<std::string>& v) {
      if (!cfg.potential) cfg.potential.emplace();
      cfg.potential->coeffs = v;
    }, "exact coefficients for series and p-series")->delimiter(',');
  };
  auto spectrum = [&](CLI::App* s, bool wkb, bool oracle) {
    num(s, "hbar", "Planck constant (default 1)");
    num(s, "levels", "number of levels (default 6)");
    if (wkb) {
      num(s, "order", "WKB order 0, 2 or 4 (default 4)");
      opt(s, "route", "correction route", {"auto", "direct", "abel"});
    }
    if (oracle) {
      num(s, "grid", "grid intervals N (default 4000)");
      num(s, "xlo", "left grid end");
      num(s, "xhi", "right grid end");
      s->add_flag_callback("--no-richardson", [&cfg] { cfg.options["richardson"] = "false"; },
                           "skip extrapolation over N and 2N");
    }
  };

  app.add_subcommand("families", "list the potential catalog");

  auto* period = app.add_subcommand("period", "tabulate T(E) and T'(E)");
  pot(period);
  num(period, "emin", "lowest energy (default 0.05)");
  num(period, "emax", "highest energy (default 2)");
  num(period, "n", "number of energies (default 16)");
  opt(period, "spacing", "energy spacing", {"linear", "log"});
  period->add_flag_callback("--ode", [&cfg] { cfg.options["ode"] = "true"; },
                            "add the ODE-integration period");

  auto* certify = app.add_subcommand("certify", "run isochronicity certificates");
  pot(certify);
  opt(certify, "criterion", "i..v, a-invariance, f-invariance, landau, a-derivative, urabe or all", {});
  num(certify, "tol", "tolerance (default 1e-8)");
  certify->add_option("--x", cfg.points, "sample points (default: turning-point grid)")->delimiter(',');
  certify->add_flag("--expect-isochronous", cfg.expect_isochronous, "exit 2 on a NotIsochronous verdict");

  auto* inv = app.add_subcommand("involution", "evaluate A(x)");
  pot(inv);
  inv->add_option("--x", cfg.points, "points")->delimiter(',')->required();

  auto* series = app.add_subcommand("series", "exact series recursions");
  series->add_option("action", cfg.action, "recursion")
      ->required()
      ->check(CLI::IsMember({"odd-from-even", "g-from-f", "urabe", "p-from-f"}));
  series->add_option("--coeffs", cfg.coeffs, "exact inputs: integers, p/q or decimals")
      ->delimiter(',')
      ->required();
  num(series, "order", "truncation order for g-from-f");

  auto* wkb = app.add_subcommand("wkb", "WKB spectrum");
  pot(wkb);
  spectrum(wkb, true, false);

  auto* oracle = app.add_subcommand("oracle", "finite-difference quantum spectrum");
  pot(oracle);
  spectrum(oracle, false, true);

  auto* compare = app.add_subcommand("compare", "WKB against the quantum oracle");
  pot(compare);
  spectrum(compare, true, true);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  app.parse(rev);
  if (auto subs = app.get_subcommands(); !subs.empty()) cfg.command = subs.front()->get_name();
}

}  // namespace

RunConfig parse_args(const std::vector<std::string>& args) {
  Parsed parsed;
  CLI::App app("isochrone-cli");
  try {
    parse(args, parsed, app);
  } catch (const CLI::Error& e) {
    throw ParseError(e.what());
  }
  if (parsed.config.command.empty()) throw ParseError("no command given");
  return parsed.config;
}

int run(int argc, const char* const* argv) {
  Parsed parsed;
  CLI::App app("Isochronous potential toolkit", "isochrone-cli");
  std::vector<std::string> args(argv + 1, argv + argc);
  auto usage = [&](const std::string& msg) {
    std::cerr << "usage error: " << msg << "\n\n" << app.help() << "\nRunConfig schema:\n"
              << run_config_schema() << "\n";
    return kExitUsage;
  };
  try {
    parse(args, parsed, app);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::Error& e) {
    return usage(e.what());
  }

  RunConfig cfg = parsed.config;
  try {
    if (!parsed.config_file.empty()) {
      if (!cfg.command.empty()) return usage("--config cannot be combined with a command");
      std::ifstream in(parsed.config_file);
      if (!in) return usage("cannot read " + parsed.config_file);
      Json j;
      try {
        j = Json::parse(in);
      } catch (const Json::exception& e) {
        return usage(std::string("invalid JSON: ") + e.what());
      }
      cfg = run_config_from_json(j);
      // Output flags on the command line still apply.
      if (app.get_option("--format")->count()) cfg.format = parsed.config.format;
      if (app.get_option("--output")->count()) cfg.output = parsed.config.output;
    }
    if (cfg.command.empty()) return usage("no command given");
  } catch (const ParseError& e) {
    return usage(e.what());
  }

  if (parsed.dump_config) {
    std::cout << dump_json(to_json(cfg)) << "\n";
    return kExitOk;
  }

  try {
    const Output out = execute(cfg);
    const std::string text = render(cfg, out);
    if (cfg.output.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(cfg.output, std::ios::binary);
      if (!f) throw ParseError("cannot write " + cfg.output);
      f << text;
    }
    return out.exit_code;
  } catch (const ParseError& e) {
    return usage(e.what());
  } catch (const Error& e) {
    std::cerr << "error: " << e.name() << ": " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
}

}  // namespace isochrone::cli
