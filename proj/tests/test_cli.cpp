#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "thermocone/cli.hpp"

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = thermocone::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

const std::string kQubit = R"({"levels":[{"energy":0,"degeneracy":1},{"energy":1,"degeneracy":1}]})";

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("curve emits a CSV with a header") {
  const auto r = run({"curve", "--hamiltonian", kQubit, "--beta-min", "-5", "--beta-max", "5", "--samples", "101"});
  REQUIRE(r.code == 0);
  CHECK(count_lines(r.out) == 102);
  CHECK(r.out.rfind("beta,logZ,E,S\n", 0) == 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  double best_s = -1, best_beta = 99;
  while (std::getline(in, line)) {
    double b, lz, e, s;
    REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &b, &lz, &e, &s) == 4);
    if (s > best_s) best_s = s, best_beta = b;
  }
  CHECK(best_beta == 0.0);
}

TEST_CASE("curve output is independent of the worker count") {
  const std::vector<std::string> args{"curve", "--hamiltonian", kQubit, "--samples", "37"};
  setenv("THERMOCONE_THREADS", "1", 1);
  CHECK(thermocone::cli::worker_count() == 1);
  const auto one = run(args);
  setenv("THERMOCONE_THREADS", "5", 1);
  CHECK(thermocone::cli::worker_count() == 5);
  const auto five = run(args);
  unsetenv("THERMOCONE_THREADS");
  CHECK(one.out == five.out);

  const auto js = run({"curve", "--hamiltonian", kQubit, "--samples", "1", "--format", "json"});
  const auto j = nlohmann::json::parse(js.out);
  REQUIRE(j.size() == 1);
  CHECK(j[0].size() == 4);
  for (const char* k : {"beta", "logZ", "E", "S"}) CHECK(j[0].contains(k));
}

TEST_CASE("member") {
  const auto r = run({"member", "--hamiltonian", kQubit, "--macro", R"({"E":0.5,"S":0.8})"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["member"] == false);
  CHECK(j["verdict"] == "outside");
  const auto in = nlohmann::json::parse(run({"member", "--hamiltonian", kQubit, "--macro", R"({"E":0.5,"S":0.2})"}).out);
  CHECK(in["member"] == true);
}

TEST_CASE("rate") {
  const auto r = run({"rate", "--hamiltonian", kQubit, "--rho", R"({"macro":{"E":0.5,"S":0.2},"n":1})", "--sigma",
                      R"({"macro":{"E":0.5,"S":0},"n":1})"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["rate"].get<double>() == doctest::Approx(1.0 - 0.2 / std::log(2.0)).epsilon(1e-8));
  CHECK(j["gap"].get<double>() < 1e-6);
}

TEST_CASE("other subcommands") {
  auto j = nlohmann::json::parse(run({"engine", "--hamiltonian", kQubit, "--beta-cold", "2", "--beta-less-cold", "1.5",
                                      "--beta-less-hot", "1", "--beta-hot", "0.5"}).out);
  CHECK(j["eta_engine"].get<double>() == doctest::Approx(0.572100272627));

  j = nlohmann::json::parse(run({"exchange", "--hamiltonian", kQubit, "--rho", R"({"spectrum":[0.75,0.25],"energy":0.25})",
                                 "--sigma", R"({"spectrum":[0.5,0.5],"energy":0.5})", "--beta1", "1", "--beta2", "2"}).out);
  CHECK(j["m_over_n"].get<double>() == doctest::Approx(0.603183870689));
  CHECK(j["Q"].get<double>() == doctest::Approx(0.090319847628));

  j = nlohmann::json::parse(run({"decompose", "--hamiltonian", kQubit, "--macro", R"({"E":0.5,"S":0.4})", "--beta", "0"}).out);
  CHECK(j["c_beta"].get<double>() == doctest::Approx(0.577078016356));

  j = nlohmann::json::parse(run({"wmax", "--hamiltonian", kQubit, "--state", R"({"matrix":[[[0.25,0],[0,0]],[[0,0],[0.75,0]]]})"}).out);
  CHECK(j["w_max"].get<double>() == doctest::Approx(0.5));

  j = nlohmann::json::parse(run({"protocol", "--p", "[0.7,0.3]", "--q", "[0.3,0.7]", "--n", "4"}).out);
  CHECK(j["distance"].get<double>() == doctest::Approx(0.3076));

  j = nlohmann::json::parse(run({"coarse", "--p", "[0.4,0.3,0.2,0.1]", "--q", "[0.7,0.3]"}).out);
  CHECK(j["assignment"] == nlohmann::json::array({0, 0, 1, 1}));

  j = nlohmann::json::parse(run({"sumset", "--levels", "[0,1]", "--delta", "0.01", "--k-max", "200"}).out);
  CHECK(j["k"] == 99);

  j = nlohmann::json::parse(run({"dilate", "--hamiltonian", kQubit, "--unitary", "[[0,1],[1,0]]", "--rho",
                                 R"({"matrix":[[0,0],[0,1]]})", "--sigma", R"({"matrix":[[1,0],[0,0]]})",
                                 "--m-base", "[-1,0,1]", "--m-k", "8", "--delta", "0.06"}).out);
  CHECK(j["mode"] == "case1");
  CHECK(j["distance"].get<double>() <= 0.24);
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == 2);
  CHECK(run({"nonsense"}).code == 2);
  CHECK(run({"--help"}).code == 0);

  auto r = run({"member", "--hamiltonian", "{not json", "--macro", R"({"E":0,"S":0})"});
  CHECK(r.code == 2);
  CHECK(nlohmann::json::parse(r.err)["error"]["code"] == "json");

  r = run({"member", "--hamiltonian", "/nonexistent/h.json", "--macro", R"({"E":0,"S":0})"});
  CHECK(r.code == 2);
  CHECK(nlohmann::json::parse(r.err)["error"]["code"] == "io");

  r = run({"member", "--hamiltonian", R"({"levels":[{"energy":1},{"energy":0}]})", "--macro", R"({"E":0,"S":0})"});
  CHECK(r.code == 2);
  CHECK(nlohmann::json::parse(r.err)["error"]["code"] == "hamiltonian");

  r = run({"engine", "--hamiltonian", kQubit, "--beta-cold", "0.5", "--beta-less-cold", "1", "--beta-less-hot", "1.5",
           "--beta-hot", "2"});
  CHECK(r.code == 1);
  CHECK(nlohmann::json::parse(r.err)["error"]["code"] == "ordering");

  r = run({"decompose", "--hamiltonian", kQubit, "--macro", R"({"E":0.5,"S":0.4})", "--beta", "3"});
  CHECK(r.code == 1);
  CHECK(nlohmann::json::parse(r.err)["error"]["code"] == "infeasible");

  r = run({"rate", "--hamiltonian", kQubit, "--rho", R"({"macro":{"E":0.5,"S":0.9}})", "--sigma",
           R"({"macro":{"E":0.5,"S":0}})"});
  CHECK(r.code == 2);

  r = run({"member", "--hamiltonian", kQubit, "--macro", R"({"E":0.5,"S":0.2})", "--tol", "-1"});
  CHECK(r.code == 2);
  r = run({"member", "--hamiltonian", kQubit, "--macro", R"({"E":0.5,"S":0.2})", "--format", "xml"});
  CHECK(r.code == 2);
  r = run({"protocol", "--p", "[0.7,0.3]", "--q", "[0.5,0.5]", "--n", "4"});
  CHECK(r.code == 1);
}

TEST_CASE("output files and csv records") {
  const std::string path = "cli_test_output.csv";
  auto r = run({"decompose", "--hamiltonian", kQubit, "--macro", R"({"E":0.5,"S":0.4})", "--beta", "0", "--format",
                "csv", "--out", path});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == "beta,c_beta,c_max,c_min\n0,0.577078016356,0.211460991822,0.211460991822\n");
  std::remove(path.c_str());

  r = run({"decompose", "--hamiltonian", kQubit, "--macro", R"({"E":0.5,"S":0.4})", "--beta", "0", "--out",
           "/nonexistent/dir/out.json"});
  CHECK(r.code == 2);
}

TEST_CASE("repeat runs are byte-identical") {
  const std::vector<std::string> args{"rate", "--hamiltonian", kQubit, "--rho", R"({"macro":{"E":0.3,"S":0.5}})",
                                      "--sigma", R"({"macro":{"E":0.6,"S":0.1}})"};
  CHECK(run(args).out == run(args).out);
}
