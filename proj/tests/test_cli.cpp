#include <doctest.h>

#include "commands.hpp"
#include "report.hpp"
#include "scenario.hpp"

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>

extern const char* g_test_argv0;

namespace {

namespace fs = std::filesystem;

std::string cli_binary() {
  if (const char* env = std::getenv("FRIEDMANN_LAB_BIN")) return env;
  fs::path self = g_test_argv0 ? g_test_argv0 : "unit_tests";
  return (self.parent_path().parent_path() / "tools" / "friedmann-lab")
      .string();
}

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = cli_binary() + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  size_t n = 0;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::map<std::string, std::string> kv_map(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto pos = line.find(" = ");
    if (pos == std::string::npos) continue;
    out[line.substr(0, pos)] = line.substr(pos + 3);
  }
  return out;
}

fs::path temp_file(const std::string& name) {
  return fs::temp_directory_path() / ("friedmann_lab_test_" + name);
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

} // namespace

TEST_CASE("fmt_num is round-trip safe at 17 digits") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 200; ++i) {
    const double x = u(rng) * std::pow(10.0, int(rng() % 25) - 12);
    CHECK(std::strtod(flab::fmt_num(x, 17).c_str(), nullptr) == x);
  }
}

TEST_CASE("scenario file parsing") {
  const auto path = temp_file("scenario1.cfg");
  {
    std::ofstream out(path);
    out << "# reference scenario\n"
        << "alpha = 0.6666666666666666\n"
        << "beta  = 1.3333333333333333   # vacuum term\n"
        << "gamma = 1\n"
        << "epsilon = 1\n"
        << "r_start = 0.1\n"
        << "t_span = 6\n"
        << "direction = expanding\n"
        << "precision = 12\n";
  }
  const auto sc = flab::load_scenario_file(path.string());
  CHECK(sc.alpha == doctest::Approx(2.0 / 3.0));
  CHECK(sc.beta == doctest::Approx(4.0 / 3.0));
  CHECK(sc.gamma == 1.0);
  CHECK(sc.epsilon == 1);
  CHECK(sc.r_start == 0.1);
  CHECK(sc.direction == "expanding");
  CHECK(sc.precision == 12);
  CHECK(!sc.delta);

  const auto bad_key = temp_file("scenario2.cfg");
  std::ofstream(bad_key) << "alfa = 1\n";
  CHECK_THROWS(flab::load_scenario_file(bad_key.string()));

  const auto bad_line = temp_file("scenario3.cfg");
  std::ofstream(bad_line) << "alpha 1\n";
  CHECK_THROWS(flab::load_scenario_file(bad_line.string()));

  const auto bad_number = temp_file("scenario4.cfg");
  std::ofstream(bad_number) << "alpha = fast\n";
  CHECK_THROWS(flab::load_scenario_file(bad_number.string()));

  CHECK_THROWS(flab::load_scenario_file("/nonexistent/path.cfg"));
}

TEST_CASE("flags override scenario-file values") {
  flab::ScenarioConfig file;
  file.alpha = 1.0;
  file.beta = 2.0;
  file.precision = 10;
  flab::ScenarioConfig flags;
  flags.alpha = 5.0;
  const auto merged = flab::merge(file, flags);
  CHECK(merged.alpha == 5.0);
  CHECK(merged.beta == 2.0);
  CHECK(merged.precision == 10);
}

TEST_CASE("parameter group resolution") {
  flab::ScenarioConfig both;
  both.alpha = both.beta = both.gamma = 1.0;
  both.epsilon = 1;
  both.G = 1.0;
  CHECK_THROWS(flab::resolve_reduced(both));

  flab::ScenarioConfig none;
  CHECK_THROWS(flab::resolve_reduced(none));

  flab::ScenarioConfig no_eps;
  no_eps.alpha = no_eps.beta = no_eps.gamma = 1.0;
  CHECK_THROWS(flab::resolve_reduced(no_eps));

  flab::ScenarioConfig phys;
  phys.G = phys.c = 1.0;
  phys.lambda = 4.0;
  phys.mass = 1.5707963267948966;
  const auto rp = flab::resolve_reduced(phys);
  CHECK(rp.alpha == doctest::Approx(2.0 / 3.0));
  CHECK(rp.beta == doctest::Approx(4.0 / 3.0));
  CHECK(rp.gamma == 1.0);

  flab::ScenarioConfig gated;
  gated.alpha = gated.beta = gated.gamma = 1.0;
  gated.epsilon = 1;
  gated.delta = 0.25;
  CHECK_THROWS(flab::resolve_reduced(gated)); // delta without the gate
  gated.radiation = true;
  CHECK(flab::resolve_reduced(gated).delta == 0.25);
}

TEST_CASE("integration settings resolution") {
  flab::ScenarioConfig sc;
  sc.direction = "contracting";
  sc.t_span = 2.5;
  const auto cfg = flab::resolve_integration(sc);
  CHECK(cfg.direction == friedmann::Direction::contracting);
  CHECK(cfg.t_span == 2.5);
  sc.direction = "sideways";
  CHECK_THROWS(flab::resolve_integration(sc));
}

TEST_CASE("report emission formats") {
  flab::Report rep(6);
  rep.text("name", "value");
  rep.number("x", 0.5);
  rep.integer("n", 3);
  rep.begin_list("items");
  rep.list_row();
  rep.row_text("kind", "a");
  rep.row_number("t", 1.25);

  std::ostringstream kv;
  rep.emit(kv, flab::Format::kv);
  CHECK(kv.str() == "name = value\nx = 0.5\nn = 3\nitems.0.kind = a\n"
                    "items.0.t = 1.25\n");

  std::ostringstream csv;
  rep.emit(csv, flab::Format::csv);
  CHECK(csv.str() ==
        "name,value\nx,0.5\nn,3\nitems.0.kind,a\nitems.0.t,1.25\n");

  std::ostringstream js;
  rep.emit(js, flab::Format::json);
  const auto parsed = nlohmann::json::parse(js.str());
  CHECK(parsed["name"] == "value");
  CHECK(parsed["x"] == 0.5);
  CHECK(parsed["n"] == 3);
  CHECK(parsed["items"][0]["kind"] == "a");
  CHECK(parsed["items"][0]["t"] == 1.25);
}

TEST_CASE("cli: classify reports the three-real regime") {
  const auto res = run_cli("classify --alpha 1 --beta 1 --gamma 3 --epsilon 1");
  CHECK(res.code == 0);
  const auto kv = kv_map(res.out);
  CHECK(kv.at("regime") == "case-IIi");
  CHECK(std::stod(kv.at("r1")) == doctest::Approx(0.34729635533386066));
  CHECK(std::stod(kv.at("r2")) == doctest::Approx(1.5320888862379561));
  CHECK(std::stod(kv.at("D")) == doctest::Approx(-0.75));
  CHECK(kv.count("forbidden_interval") == 1);
}

TEST_CASE("cli: classify exit codes per regime and input quality") {
  CHECK(run_cli("classify --alpha 0.667 --beta 1.333 --gamma 1 --epsilon 1")
            .code == 0);
  CHECK(run_cli("classify --alpha 2 --beta 1 --gamma 3 --epsilon 1").code ==
        3);
  CHECK(run_cli("classify --alpha 2 --beta 1 --gamma 0 --epsilon 0").code ==
        0);
  CHECK(run_cli("classify --alpha -1 --beta 1 --gamma 0 --epsilon 0").code ==
        2);
  CHECK(run_cli("classify").code == 2);
  // degenerate still prints the report
  const auto deg = run_cli("classify --alpha 2 --beta 1 --gamma 3 --epsilon 1");
  CHECK(kv_map(deg.out).at("regime") == "degenerate");
}

TEST_CASE("cli: markers on physical input") {
  const auto res = run_cli(
      "markers --G 1 --c 1 --lambda 4 --mass 1.5707963267948966");
  CHECK(res.code == 0);
  const auto kv = kv_map(res.out);
  CHECK(std::stod(kv.at("r_min")) == doctest::Approx(1.0));
  CHECK(std::stod(kv.at("h_min")) == doctest::Approx(1.0));
  CHECK(std::stod(kv.at("lambda_min")) == doctest::Approx(1.0));
  CHECK(std::stod(kv.at("r_min_physical")) == doctest::Approx(1.0));
  CHECK(kv.at("h_w_vs_asymptote") == "above");

  CHECK(run_cli("markers --alpha 1 --beta 1 --gamma 3 --epsilon 1").code ==
        4);
}

TEST_CASE("cli: markers with the radiation correction") {
  const auto res = run_cli(
      "markers --alpha 0.6666666666666666 --beta 1.3333333333333333 "
      "--gamma 1 --epsilon 1 --radiation --delta 0.125");
  CHECK(res.code == 0);
  CHECK(std::stod(kv_map(res.out).at("r_min_rad")) ==
        doctest::Approx(1.2071067811865475));
  // delta without the gate is invalid input
  CHECK(run_cli("markers --alpha 0.667 --beta 1.333 --gamma 1 --epsilon 1 "
                "--delta 0.125")
            .code == 2);
}

TEST_CASE("cli: evolve writes the declared CSV schema and events") {
  const auto csv_path = temp_file("traj.csv");
  const std::string base =
      "evolve --alpha 0.6666666666666666 --beta 1.3333333333333333 "
      "--gamma 1 --epsilon 1 --r-start 0.1 --t-span 6 --out " +
      csv_path.string();
  const auto res = run_cli(base);
  CHECK(res.code == 0);
  const auto kv = kv_map(res.out);
  CHECK(kv.at("status") == "ok");
  CHECK(kv.at("events.0.kind") == "r-turning-point");
  CHECK(kv.at("events.1.kind") == "hubble-minimum");
  CHECK(kv.at("events.2.kind") == "h-turning-point");
  CHECK(std::stod(kv.at("events.1.R")) == doctest::Approx(1.0).epsilon(1e-4));

  std::ifstream csv(csv_path);
  std::string header;
  std::getline(csv, header);
  CHECK(header == "t,R,Rdot,H");
  std::string row;
  size_t rows = 0;
  while (std::getline(csv, row)) {
    CHECK(std::count(row.begin(), row.end(), ',') == 3);
    ++rows;
  }
  CHECK(rows == std::stoull(kv.at("samples")));

  // identical invocations produce byte-identical outputs
  const auto res2 = run_cli(base);
  CHECK(res2.out == res.out);
  const std::string csv_first = slurp(csv_path);
  run_cli(base);
  CHECK(slurp(csv_path) == csv_first);
}

TEST_CASE("cli: evolve exit codes for forbidden and degenerate inputs") {
  CHECK(run_cli("evolve --alpha 1 --beta 1 --gamma 3 --epsilon 1 "
                "--r-start 1 --t-span 1 --out " +
                temp_file("t1.csv").string())
            .code == 5);
  CHECK(run_cli("evolve --alpha 2 --beta 1 --gamma 3 --epsilon 1 "
                "--r-start 0.1 --t-span 1 --out " +
                temp_file("t2.csv").string())
            .code == 3);
}

TEST_CASE("cli: evolve reports a floor hit as integration failure") {
  const auto res = run_cli(
      "evolve --alpha 2 --beta 1 --gamma 0 --epsilon 0 --direction "
      "contracting --r-start 0.5 --t-span 10 --r-floor 0.001 --out " +
      temp_file("t3.csv").string());
  CHECK(res.code == 6);
  const auto kv = kv_map(res.out);
  CHECK(kv.at("status") == "singularity-floor");
  bool has_floor_event = false;
  for (const auto& [k, v] : kv)
    if (v == "singularity-approach") has_floor_event = true;
  CHECK(has_floor_event);
}

TEST_CASE("cli: json format parses and matches kv content") {
  const std::string args =
      "markers --alpha 2 --beta 1 --gamma 1 --epsilon 1";
  const auto kv = kv_map(run_cli(args).out);
  const auto js = run_cli(args + " --format json");
  CHECK(js.code == 0);
  const auto parsed = nlohmann::json::parse(js.out);
  CHECK(parsed["regime"] == "case-IIii");
  CHECK(parsed["r_min"].get<double>() ==
        doctest::Approx(std::stod(kv.at("r_min"))));
  CHECK(parsed["h_min_sq"].get<double>() == doctest::Approx(26.0 / 27.0));
}

TEST_CASE("cli: invert recovers the cosmological constant") {
  const auto res =
      run_cli("invert --h-min 1 --G 1 --c 1 --mass 1.5707963267948966");
  CHECK(res.code == 0);
  const auto kv = kv_map(res.out);
  CHECK(std::stod(kv.at("lambda")) == doctest::Approx(4.0));
  CHECK(std::stod(kv.at("lambda_min")) == doctest::Approx(1.0));

  const auto boundary =
      run_cli("invert --h-min 0 --G 1 --c 1 --mass 1.5707963267948966");
  CHECK(std::stod(kv_map(boundary.out).at("lambda")) == doctest::Approx(1.0));

  CHECK(run_cli("invert --h-min 1 --G 1 --c 1").code == 2);
}

TEST_CASE("cli: config file with flag overrides") {
  const auto cfg = temp_file("base.cfg");
  std::ofstream(cfg) << "alpha = 1\nbeta = 1\ngamma = 3\nepsilon = 1\n";
  const auto base = run_cli("classify --config " + cfg.string());
  CHECK(base.code == 0);
  CHECK(kv_map(base.out).at("regime") == "case-IIi");
  // flag flips the regime by overriding alpha
  const auto overridden =
      run_cli("classify --config " + cfg.string() + " --alpha 40");
  CHECK(kv_map(overridden.out).at("regime") == "case-IIii");
}

TEST_CASE("cli: single-point sweep matches classify") {
  const auto grid = temp_file("sweep_one.csv");
  const auto res = run_cli(
      "sweep --G 1 --c 1 --sweep lambda=4:4:1 "
      "--sweep mass=1.5707963267948966:1.5707963267948966:1 --out " +
      grid.string());
  CHECK(res.code == 0);
  std::ifstream in(grid);
  std::string header, row;
  std::getline(in, header);
  CHECK(header == "i,j,lambda,mass,p,q,D,regime");
  REQUIRE(std::getline(in, row));
  CHECK(row.find("case-IIii") != std::string::npos);

  const auto direct = run_cli(
      "classify --G 1 --c 1 --lambda 4 --mass 1.5707963267948966");
  const auto kv = kv_map(direct.out);
  CHECK(kv.at("regime") == "case-IIii");
  // same D in both outputs
  CHECK(row.find(kv.at("D")) != std::string::npos);
}

TEST_CASE("cli: sweep axis validation") {
  CHECK(run_cli("sweep --G 1 --c 1 --sweep lambda=1:2:5").code == 2);
  CHECK(run_cli("sweep --G 1 --c 1 --sweep lambda=1:2:5 --sweep alpha=1:2:5 "
                "--out " +
                temp_file("s2.csv").string())
            .code == 2);
  CHECK(run_cli("sweep --G 1 --c 1 --sweep lambda=2:1:5 --sweep mass=1:2:5 "
                "--out " +
                temp_file("s3.csv").string())
            .code == 2);
}
