#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "cli_app.hpp"
#include "revival/io.hpp"

using namespace revival;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> data_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '#') lines.push_back(line);
  }
  return lines;
}

std::vector<double> split_numbers(const std::string& line) {
  std::vector<double> v;
  std::istringstream in(line);
  std::string cell;
  while (std::getline(in, cell, ',')) v.push_back(io::parse_double(cell, "cell"));
  return v;
}

std::map<std::string, std::string> report(const std::string& text) {
  const auto f = io::KeyValueFile::parse_string(text);
  return {f.entries().begin(), f.entries().end()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / ("revival_test_" + name);
  std::ofstream(path) << content;
  return path;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("help exits 0, bad usage exits 2") {
  CHECK(run_cli({"--help"}).code == 0);
  CHECK(run_cli({}).code == cli::kExitUsage);
  CHECK(run_cli({"bogus"}).code == cli::kExitUsage);
  CHECK(run_cli({"spectrum"}).code == cli::kExitUsage);
  CHECK(run_cli({"spectrum", "--beta", "abc"}).code == cli::kExitUsage);
  CHECK(run_cli({"spectrum", "--beta", "0", "--method", "dvr"}).code == cli::kExitUsage);
  CHECK(run_cli({"spectrum", "--beta", "0", "--solver", "lapack"}).code == cli::kExitUsage);
}

TEST_CASE("spectrum wkb at beta = 0") {
  const auto r = run_cli({"spectrum", "--beta", "0", "--n", "10", "--method", "wkb"});
  REQUIRE(r.code == 0);
  const auto lines = data_lines(r.out);
  REQUIRE(lines.size() == 11);
  CHECK(lines[0] == "n,E");
  for (int n = 0; n < 10; ++n) {
    const auto v = split_numbers(lines[n + 1]);
    CHECK(v[0] == n);
    CHECK(v[1] == n + 0.5);
  }
}

TEST_CASE("spectrum all columns") {
  const auto r = run_cli({"spectrum", "--beta", "1e-4", "--levels", "30", "--method", "all"});
  REQUIRE(r.code == 0);
  const auto lines = data_lines(r.out);
  REQUIRE(lines.size() == 31);
  CHECK(lines[0] == "n,E_wkb,E_pt2,E_exact,abs_err_wkb,abs_err_pt2");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto v = split_numbers(lines[i]);
    REQUIRE(v.size() == 6);
    CHECK(v[4] == std::abs(v[1] - v[3]));
    CHECK(v[5] == std::abs(v[2] - v[3]));
  }
}

TEST_CASE("spectrum exact and solvers agree") {
  const auto a = run_cli({"spectrum", "--beta", "0.0398", "--n", "8", "--method", "exact"});
  const auto b = run_cli({"spectrum", "--beta", "0.0398", "--n", "8", "--method", "exact",
                          "--solver", "jacobi", "--basis", "120"});
  REQUIRE(a.code == 0);
  REQUIRE(b.code == 0);
  const auto la = data_lines(a.out);
  const auto lb = data_lines(b.out);
  REQUIRE(la.size() == 9);
  REQUIRE(lb.size() == 9);
  for (std::size_t i = 1; i < 9; ++i) {
    CHECK(std::abs(split_numbers(la[i])[1] - split_numbers(lb[i])[1]) < 1e-10);
  }
}

TEST_CASE("spectrum beta cap") {
  const auto r = run_cli({"spectrum", "--beta", "0.6", "--n", "5"});
  CHECK(r.code == cli::kExitUsage);
  CHECK(r.err.find("0.5") != std::string::npos);
  CHECK(r.err.find("cap") != std::string::npos);
}

TEST_CASE("spectrum writes to a file") {
  const auto path = std::filesystem::temp_directory_path() / "revival_test_spectrum.csv";
  const auto r = run_cli({"spectrum", "--beta", "0.01", "--n", "4", "--method", "pt1", "-o",
                          path.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str().find("0,0.50187499999999996") != std::string::npos);
  std::filesystem::remove(path);
}

TEST_CASE("evolve at beta = 0 needs --no-envelope") {
  const auto r = run_cli({"evolve", "--beta", "0", "--d", "4", "--t-end", "20"});
  CHECK(r.code == cli::kExitUsage);
  CHECK(r.err.find("envelope") != std::string::npos);

  const auto ok = run_cli({"evolve", "--beta", "0", "--d", "4", "--t-end", "20", "--samples",
                           "201", "--no-envelope"});
  REQUIRE(ok.code == 0);
  const auto lines = data_lines(ok.out);
  CHECK(lines[0] == "t,x_exact,p_exact,x_series,p_series");
  REQUIRE(lines.size() == 202);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto v = split_numbers(lines[i]);
    CHECK(std::abs(v[1] - 4 * std::cos(v[0])) < 1e-8);
    CHECK(std::abs(v[2] + 4 * std::sin(v[0])) < 1e-8);
    CHECK(std::abs(v[3] - 4 * std::cos(v[0])) < 1e-7);
  }
}

TEST_CASE("evolve truncation failure exits 3 naming N") {
  const auto r = run_cli({"evolve", "--beta", "1e-4", "--d", "4", "-N", "20", "--samples", "10"});
  CHECK(r.code == cli::kExitNumeric);
  CHECK(r.err.find("N") != std::string::npos);
  CHECK(r.err.find("47") != std::string::npos);
}

TEST_CASE("evolve columns and preamble") {
  const auto r = run_cli({"evolve", "--beta", "1e-4", "--d", "4", "--t-end", "50", "--samples",
                          "11", "--compare-orders", "--order", "second"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("# beta = 0.0001\n") != std::string::npos);
  CHECK(r.out.find("# d = 4\n") != std::string::npos);
  CHECK(r.out.find("# N = 57\n") != std::string::npos);
  CHECK(r.out.find("# method = wkb\n") != std::string::npos);
  CHECK(r.out.find("# order = second\n") != std::string::npos);
  CHECK(r.out.find("# tool = revival-sim") != std::string::npos);
  const auto lines = data_lines(r.out);
  CHECK(lines[0] == "t,x_exact,p_exact,x_series,p_series,x_env_hi,x_env_lo,env_leading,env_second");
  const auto first = split_numbers(lines[1]);
  CHECK(first[1] == doctest::Approx(4.0).epsilon(1e-7));
  CHECK(first[5] == 4.0);
  CHECK(first[6] == -4.0);
}

TEST_CASE("evolve with negative displacement mirrors both pipelines") {
  const std::vector<std::string> base{"evolve", "--beta", "0.0398", "--t-end", "30",
                                      "--samples", "31", "--no-envelope"};
  auto plus_args = base;
  plus_args.insert(plus_args.end(), {"--d", "1.61"});
  auto minus_args = base;
  minus_args.insert(minus_args.end(), {"--d", "-1.61"});
  const auto plus = data_lines(run_cli(plus_args).out);
  const auto minus = data_lines(run_cli(minus_args).out);
  REQUIRE(plus.size() == minus.size());
  for (std::size_t i = 1; i < plus.size(); ++i) {
    const auto a = split_numbers(plus[i]);
    const auto b = split_numbers(minus[i]);
    for (std::size_t c = 1; c < a.size(); ++c) CHECK(a[c] == -b[c]);
  }
}

TEST_CASE("evolve config file and unknown keys") {
  const auto good = temp_file("scenario.cfg",
                              "beta = 0.01\nd = 2\nt_end = 10\nsamples = 5\nexact = false\n");
  const auto r = run_cli({"evolve", "--config", good.string()});
  REQUIRE(r.code == 0);
  CHECK(data_lines(r.out)[0] == "t,x_series,p_series,x_env_hi,x_env_lo");
  const auto bad = temp_file("scenario_bad.cfg", "beta = 0.01\nd = 2\nbta = 3\n");
  CHECK(run_cli({"evolve", "--config", bad.string()}).code == cli::kExitUsage);
  CHECK(run_cli({"evolve", "--preset", "fig9"}).code == cli::kExitUsage);
  CHECK(run_cli({"evolve", "--beta", "1e-4", "--d", "4", "--samples", "1"}).code ==
        cli::kExitUsage);
  std::filesystem::remove(good);
  std::filesystem::remove(bad);
}

TEST_CASE("evolve output is deterministic across thread counts") {
  const std::vector<std::string> args{"evolve", "--beta", "0.0398", "--d", "1.61",
                                      "--revivals", "1.5"};
  auto one = args;
  one.insert(one.begin(), {"--threads", "1"});
  auto three = args;
  three.insert(three.begin(), {"--threads", "3"});
  const auto a = run_cli(one);
  const auto b = run_cli(one);
  const auto c = run_cli(three);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
  setenv("REVIVAL_SIM_THREADS", "2", 1);
  const auto d = run_cli(args);
  setenv("REVIVAL_SIM_THREADS", "zero", 1);
  const auto e = run_cli(args);
  unsetenv("REVIVAL_SIM_THREADS");
  CHECK(a.out == d.out);
  CHECK(e.code == cli::kExitUsage);
}

TEST_CASE("fig presets") {
  const auto fig1 = cli::preset_scenario("fig1");
  CHECK(fig1.beta == 1e-4);
  CHECK(fig1.displacement == 4);
  CHECK(fig1.revivals == 2.2);
  const auto fig2a = cli::preset_scenario("fig2a");
  CHECK(fig2a.beta == doctest::Approx(0.0398).epsilon(0.01));
  CHECK(fig2a.displacement == doctest::Approx(1.61).epsilon(0.01));
  CHECK(fig2a.compare_orders);
  CHECK(cli::preset_scenario("fig2b").beta == doctest::Approx(0.0178).epsilon(0.01));
  CHECK(cli::preset_scenario("fig2c").beta == doctest::Approx(0.0126).epsilon(0.01));

  const auto r = run_cli({"evolve", "--preset", "fig2a", "--samples-per-period", "8"});
  REQUIRE(r.code == 0);
  CHECK(data_lines(r.out)[0] ==
        "t,x_exact,p_exact,x_series,p_series,x_env_hi,x_env_lo,env_leading,env_second");
}

TEST_CASE("experiment presets") {
  const auto lat = run_cli({"experiment", "lattice-35Er", "--preset-dir", REVIVAL_TEST_PRESET_DIR});
  REQUIRE(lat.code == 0);
  auto kv = report(lat.out);
  CHECK(io::parse_double(kv["beta_abs"], "") == doctest::Approx(0.0398).epsilon(0.01));
  CHECK(io::parse_double(kv["d"], "") == doctest::Approx(1.61).epsilon(0.01));
  CHECK(io::parse_double(kv["T_r_ms"], "") == doctest::Approx(1.2).epsilon(0.02));
  CHECK(kv.count("delta_x") == 1);

  const auto cb = run_cli({"experiment", "crossed-beam-rb"});
  REQUIRE(cb.code == 0);
  kv = report(cb.out);
  CHECK(kv["n_max"] == "19");
  CHECK(io::parse_double(kv["d_max"], "") == doctest::Approx(4.4).epsilon(0.01));
  CHECK(std::abs(io::parse_double(kv["T_r_s"], "") / 4.37 - 1) < 0.05);

  for (const char* name : {"lattice-175Er", "lattice-350Er"}) {
    CHECK(run_cli({"experiment", name}).code == 0);
  }
}

TEST_CASE("experiment rejections") {
  CHECK(run_cli({"experiment", "lattice-9Er"}).code == cli::kExitUsage);
  CHECK(run_cli({"experiment"}).code == cli::kExitUsage);
  const auto alpha = temp_file("alpha.cfg",
                               "kind = lattice\ndepth = 35\nwavelength = 838e-9\nalpha = 0.5\n");
  const auto r = run_cli({"experiment", "--spec", alpha.string()});
  CHECK(r.code == cli::kExitUsage);
  CHECK(r.err.find("alpha") != std::string::npos);
  const auto typo = temp_file("typo.cfg",
                              "kind = lattice\ndepth = 35\nwavelength = 838e-9\nalpha = 0.25\n"
                              "wavelenght = 1\n");
  CHECK(run_cli({"experiment", "--spec", typo.string()}).code == cli::kExitUsage);
  const auto kind = temp_file("kind.cfg", "kind = magnetic\n");
  CHECK(run_cli({"experiment", "--spec", kind.string()}).code == cli::kExitUsage);
  for (const auto& p : {alpha, typo, kind}) std::filesystem::remove(p);
}

TEST_CASE("envelope report") {
  const auto r = run_cli({"envelope-report", "--beta", "0.0398", "--d", "1.61"});
  REQUIRE(r.code == 0);
  auto kv = report(r.out);
  CHECK(io::parse_double(kv["T_r"], "") == doctest::Approx(210.3).epsilon(0.01));
  CHECK(kv["order"] == "leading");
  CHECK(run_cli({"envelope-report", "--beta", "0", "--d", "1"}).code == cli::kExitUsage);
  CHECK(run_cli({"envelope-report", "--beta", "1e-4", "--d", "4", "--order", "second"}).code ==
        0);
}

}
