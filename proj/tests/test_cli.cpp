#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "digs/cli.hpp"
#include "fixtures.hpp"

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "digs");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = digs::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("digs_test_cli_" + name);
}

std::string write_config(const std::string& name, const std::string& text) {
  const auto path = scratch(name);
  std::ofstream(path) << text;
  return path.string();
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("sweep writes CSV with optical columns") {
  const Result r = run({"sweep", "--preset", "fig1-red", "--grid=-1:1:5"});
  REQUIRE(r.code == 0);
  CHECK(r.out.starts_with("delta_p,re_chi,im_chi,n,delta_n,alpha\n"));
  CHECK(count_lines(r.out) == 6);
  CHECK(r.out.find("-1,0.012491626589634") != std::string::npos);
}

TEST_CASE("sweep output is deterministic") {
  const Result a = run({"sweep", "--preset", "fig1-red", "--backend", "numeric", "--grid", "-2:2:201"});
  const Result b = run({"sweep", "--preset", "fig1-red", "--backend", "numeric", "--grid", "-2:2:201"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("sweep JSON") {
  const Result r = run({"sweep", "--preset", "fig1-red", "--grid=0:1:3", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["backend"] == "analytic");
  REQUIRE(doc["points"].size() == 3);
  CHECK(doc["points"][2]["delta_p"] == 1.0);
  CHECK(doc["points"][0].contains("delta_n"));
}

TEST_CASE("sweep to a file") {
  const auto path = scratch("sweep.csv");
  const Result r = run({"sweep", "--preset", "fig1-red", "--grid=0:1:3", "--out", path.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "delta_p,re_chi,im_chi,n,delta_n,alpha");
}

TEST_CASE("config without a medium has three columns") {
  const std::string path = write_config("nomedium.cfg", R"([atom]
omega_b = 0.65
omega_c = 0.15
[relaxation]
ground = 1e-4
gamma_a_a = 2
gamma_a_b = 1
gamma_a_bp = 1
gamma_a_c = 1
gamma_a_cp = 1
r_b = 5e-5
r_cp = 0.023
[sweep]
min = -1
max = 1
points = 3
)");
  const Result r = run({"sweep", "--config", path});
  REQUIRE(r.code == 0);
  CHECK(r.out.starts_with("delta_p,re_chi,im_chi\n"));
}

TEST_CASE("closed form with a detuned control is a configuration error") {
  const std::string path = write_config("detuned.cfg", R"([atom]
omega_b = 0.65
omega_c = 0.15
delta_mu = 0.1
[relaxation]
ground = 1e-4
gamma_a_a = 2
gamma_a_b = 1
gamma_a_bp = 1
gamma_a_c = 1
gamma_a_cp = 1
)");
  const Result r = run({"sweep", "--config", path});
  CHECK(r.code == digs::cli::kExitConfig);
  CHECK(r.out.empty());
  CHECK(r.err.find("numeric") != std::string::npos);
  CHECK(run({"sweep", "--config", path, "--backend", "numeric", "--grid=-1:1:3"}).code == 0);
}

TEST_CASE("backend failure exit code") {
  const std::string path = write_config("strong.cfg", R"(backend = numeric
[atom]
omega_b = 0.65
omega_c = 0.15
omega_p = 0.01
[relaxation]
ground = 1e-4
gamma_a_a = 2
gamma_a_b = 1
gamma_a_bp = 1
gamma_a_c = 1
gamma_a_cp = 1
)");
  const Result r = run({"sweep", "--config", path, "--grid=-1:1:3"});
  CHECK(r.code == digs::cli::kExitBackend);
  CHECK_FALSE(r.err.empty());
}

TEST_CASE("usage errors") {
  CHECK(run({"sweep"}).code == digs::cli::kExitConfig);
  CHECK(run({"sweep", "--preset", "nope"}).code == digs::cli::kExitConfig);
  CHECK(run({"sweep", "--preset", "fig1-red", "--grid", "1:0:5"}).code == digs::cli::kExitConfig);
  CHECK(run({"sweep", "--preset", "fig1-red", "--grid", "0:1"}).code == digs::cli::kExitConfig);
  CHECK(run({"sweep", "--preset", "fig1-red", "--format", "xml"}).code == digs::cli::kExitConfig);
  CHECK(run({"frobnicate"}).code == digs::cli::kExitConfig);
  CHECK(run({"sweep", "--preset", "fig1-red", "--config", "x.cfg"}).code == digs::cli::kExitConfig);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("zeros reports both roots with their index") {
  const Result r = run({"zeros", "--preset", "fig1-red"});
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  REQUIRE(doc["zeros"].size() == 2);
  const auto& z = doc["zeros"][0];
  CHECK(z["delta_p_zero"].get<double>() == doctest::Approx(-0.3425371143861897).epsilon(1e-10));
  CHECK(z["re_chi"].get<double>() == doctest::Approx(0.3289402996981494).epsilon(1e-8));
  CHECK(z["delta_n"].get<double>() > 2.0);
  CHECK(z["backend"] == "analytic");
}

TEST_CASE("zeros without a sign change is an empty list") {
  const Result r = run({"zeros", "--preset", "fig4-1"});
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["zeros"].empty());
  CHECK(doc["no_sign_change"].size() == 2);
}

TEST_CASE("Doppler width switches to the numeric backend") {
  const Result r = run({"zeros", "--preset", "fig3", "--sigma-delta", "0.05", "--samples", "101"});
  REQUIRE(r.code == 0);
  CHECK(r.err.find("numeric") == std::string::npos);  // fig3 is already numeric
  const Result s = run({"sweep", "--preset", "fig1-red", "--sigma-delta", "0.001", "--grid=-0.5:0.5:3"});
  REQUIRE(s.code == 0);
  CHECK(s.err.find("numeric") != std::string::npos);
  CHECK(run({"sweep", "--preset", "fig1-red", "--sigma-delta", "0.001", "--backend", "analytic"}).code ==
        digs::cli::kExitConfig);
}

TEST_CASE("decoherence scan") {
  const Result r = run({"zeros", "--preset", "fig2", "--scan", "gamma1", "0.001:0.1:5"});
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["scan"] == "gamma1");
  REQUIRE(doc["rows"].size() == 5);
  CHECK(doc["rows"][0]["delta_p_zero"].get<double>() == doctest::Approx(-0.343658207668938).epsilon(1e-9));
  CHECK(doc["rows"][4]["delta_p_zero"].is_null());
  CHECK(run({"zeros", "--preset", "fig2", "--scan", "omega_c", "0.1:1:3"}).code == digs::cli::kExitConfig);
}

TEST_CASE("presets listing") {
  const Result r = run({"presets"});
  REQUIRE(r.code == 0);
  for (const auto& p : digs::presets()) CHECK(r.out.find("== " + p.name + ":") != std::string::npos);
  const Result one = run({"presets", "fig3"});
  REQUIRE(one.code == 0);
  CHECK(one.out.find("sigma_delta") != std::string::npos);
  CHECK(one.out.find("fig1-red") == std::string::npos);
  CHECK(run({"presets", "fig9"}).code == digs::cli::kExitConfig);
}

TEST_CASE("index conversion") {
  const Result r = run({"index", "--re-chi", "0.3", "--density", "1e15", "--wavelength", "8e-5"});
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["delta_n"].get<double>() == doctest::Approx(2.5598034153022153).epsilon(1e-12));
  CHECK(doc["absorption_warning"] == false);
  const Result lossy = run({"index", "--re-chi", "0.3", "--im-chi", "0.01", "--density", "1e15",
                            "--wavelength", "8e-5"});
  REQUIRE(lossy.code == 0);
  CHECK(lossy.err.find("warning") != std::string::npos);
  CHECK(run({"index", "--re-chi", "0.3", "--density", "-1", "--wavelength", "8e-5"}).code ==
        digs::cli::kExitConfig);
}
