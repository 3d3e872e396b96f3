#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "isochrone/cli.hpp"
#include "isochrone/errors.hpp"

using namespace isochrone;

namespace {

int run_args(std::vector<std::string> args) {
  args.insert(args.begin(), "isochrone-cli");
  std::vector<const char*> argv;
  for (auto& a : args) argv.push_back(a.c_str());
  // Silence the command's own output.
  std::stringstream sink;
  auto* old_out = std::cout.rdbuf(sink.rdbuf());
  auto* old_err = std::cerr.rdbuf(sink.rdbuf());
  const int code = cli::run(static_cast<int>(argv.size()), argv.data());
  std::cout.rdbuf(old_out);
  std::cerr.rdbuf(old_err);
  return code;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  for (std::string cell; std::getline(ss, cell, ',');) out.push_back(cell);
  return out;
}

}  // namespace

TEST_CASE("number formatting") {
  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(format_number(2.0) == "2");
  CHECK(format_number(-1e-300) == "-1e-300");
  CHECK(format_number(1.0 / 3) == "0.33333333333333331");
  CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");
}

TEST_CASE("descriptor and series serialization") {
  PotentialDescriptor d;
  d.family = "family4";
  d.params = {{"alpha", 0.25}, {"beta", 1.5}};
  d.scale = 2.0;
  CHECK(descriptor_from_json(Json::parse(dump_json(to_json(d)))) == d);

  PotentialDescriptor s;
  s.family = "series";
  s.coeffs = {"1", "10/9"};
  CHECK(descriptor_from_json(to_json(s)) == s);
  CHECK_THROWS_AS(descriptor_from_json(Json::parse(R"({"alpha": 1})")), ParseError);

  const TruncSeries t({Rational(1) / 3, -2, 0});
  CHECK(to_json(t).dump() == R"(["1/3","-2/1","0/1"])");
  CHECK(series_from_json(to_json(t)) == t);
}

TEST_CASE("run config round-trips bit-exactly") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> U(-1e3, 1e3);
  for (int i = 0; i < 100; ++i) {
    RunConfig c;
    c.command = "oracle";
    c.potential = PotentialDescriptor{"isotonic", {{"alpha", U(rng)}}, {}, 1.0};
    c.params = {{"hbar", std::abs(U(rng)) * 1e-7}, {"grid", 4000}, {"tol", U(rng)}};
    c.options = {{"route", "abel"}};
    c.points = {U(rng), 1e-310, -0.0};
    c.expect_isochronous = i % 2;
    c.format = i % 3 ? "json" : "csv";
    const RunConfig back = run_config_from_json(Json::parse(dump_json(to_json(c))));
    CHECK(back == c);
    CHECK(std::signbit(back.points[2]));
  }
}

TEST_CASE("run config rejects unknown keys") {
  CHECK_THROWS_AS(run_config_from_json(Json::parse(R"({"command": "period", "colour": 1})")), ParseError);
  CHECK_THROWS_AS(run_config_from_json(Json::parse(R"({"params": {}})")), ParseError);
  CHECK_THROWS_AS(run_config_from_json(Json::parse(R"({"command": "period", "format": "xml"})")), ParseError);
  CHECK_NOTHROW(run_config_from_json(Json::parse(R"({"command": "families"})")));
}

TEST_CASE("documented command examples") {
  const RunConfig s = cli::parse_args({"series", "odd-from-even", "--coeffs", "1"});
  const cli::Output so = cli::execute(s);
  CHECK(so.meta["result"].dump() == R"({"a3":"10/9"})");

  const RunConfig p = cli::parse_args({"period", "--family", "harmonic", "--emin", "0.1", "--emax", "10",
                                       "--n", "5"});
  const cli::Output po = cli::execute(p);
  REQUIRE(po.table.rows.size() == 5);
  for (const auto& r : po.table.rows) CHECK(std::get<double>(r[1]) == doctest::Approx(2 * M_PI).epsilon(1e-12));

  const RunConfig c = cli::parse_args({"certify", "--family", "isotonic", "--alpha", "1", "--criterion",
                                       "landau", "--tol", "1e-8"});
  const cli::Output co = cli::execute(c);
  CHECK(std::get<std::string>(co.table.rows.at(0)[2]) == "Isochronous");
  CHECK(co.exit_code == cli::kExitOk);
}

TEST_CASE("exit codes") {
  CHECK(run_args({"series", "odd-from-even", "--coeffs", "1,0"}) == cli::kExitOk);
  CHECK(run_args({"certify", "--family", "quartic", "--criterion", "iii", "--expect-isochronous"}) ==
        cli::kExitNotIsochronous);
  CHECK(run_args({"certify", "--family", "quartic", "--criterion", "iii"}) == cli::kExitOk);
  CHECK(run_args({"period", "--family", "isotonic", "--alpha", "0"}) == cli::kExitError);
  CHECK(run_args({"frobnicate"}) == cli::kExitUsage);
  CHECK(run_args({"period"}) == cli::kExitUsage);
  CHECK(run_args({}) == cli::kExitUsage);
}

TEST_CASE("output is deterministic and the encodings agree") {
  RunConfig c = cli::parse_args({"period", "--family", "family2", "--n", "4", "--spacing", "log", "--ode"});
  const std::string j1 = cli::render(c, cli::execute(c));
  const std::string j2 = cli::render(c, cli::execute(c));
  CHECK(j1 == j2);

  c.format = "csv";
  const std::string csv = cli::render(c, cli::execute(c));
  std::stringstream lines(csv);
  std::string header;
  std::getline(lines, header);
  const auto cols = split(header);
  const Json rows = Json::parse(j1)["rows"];
  size_t i = 0;
  for (std::string line; std::getline(lines, line); ++i) {
    const auto cells = split(line);
    for (size_t k = 0; k < cols.size(); ++k) {
      CHECK(std::stod(cells[k]) == rows[i][cols[k]].get<double>());
    }
  }
  CHECK(i == 4);
  CHECK(csv.find('\r') == std::string::npos);
}

TEST_CASE("config files drive the same run") {
  const RunConfig c = cli::parse_args({"wkb", "--family", "harmonic", "--order", "2", "--levels", "3"});
  const std::string path = "test_cli_config.json";
  {
    std::ofstream f(path);
    f << dump_json(to_json(c));
  }
  const std::string out_path = "test_cli_out.json";
  CHECK(run_args({"--config", path, "--output", out_path}) == cli::kExitOk);
  std::ifstream in(out_path);
  std::stringstream buf;
  buf << in.rdbuf();
  RunConfig with_output = c;
  with_output.output = out_path;
  CHECK(buf.str() == cli::render(with_output, cli::execute(c)));
  std::remove(path.c_str());
  std::remove(out_path.c_str());
}
