// Exercises the shared-library surface the CLI builds on: opaque handles,
// error codes, JSON artifacts, and the determinism guarantee.
#include <doctest.h>

#include <cstdio>
#include <cstring>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

#include "resonance/capi.h"

using Json = nlohmann::ordered_json;

namespace {

struct Str {
  char* s = nullptr;
  ~Str() { res_string_free(s); }
  Json json() const { return Json::parse(s); }
};

struct Sys {
  res_eigensystem* h = nullptr;
  ~Sys() { res_eigensystem_free(h); }
};
struct Grid {
  res_grid* h = nullptr;
  ~Grid() { res_grid_free(h); }
};
struct Dec {
  res_decomposition* h = nullptr;
  ~Dec() { res_decomposition_free(h); }
};
struct Fn {
  res_nonlinearity* h = nullptr;
  ~Fn() { res_nonlinearity_free(h); }
};

}  // namespace

TEST_SUITE_BEGIN("capi");

TEST_CASE("version string matches the header's expectations") {
  CHECK(std::string(res_version()).find('.') != std::string::npos);
}

TEST_CASE("eigensystem create/query/serialize") {
  Sys sys;
  REQUIRE(res_eigensystem_create("interval:pi", 4, &sys.h) == RES_OK);
  int n = 0, d = 0;
  CHECK(res_eigensystem_mode_count(sys.h, &n) == RES_OK);
  CHECK(n == 4);
  CHECK(res_eigensystem_distinct_count(sys.h, &d) == RES_OK);
  CHECK(d == 4);
  double lam = 0.0;
  CHECK(res_eigensystem_eigenvalue(sys.h, 2, &lam) == RES_OK);
  CHECK(lam == 4.0);
  CHECK(res_eigensystem_eigenvalue(sys.h, 9, &lam) == RES_ERR_INVALID_ARGUMENT);
  CHECK(std::strlen(res_last_error()) > 0);

  Str out;
  REQUIRE(res_eigensystem_to_json(sys.h, &out.s) == RES_OK);
  Json j = out.json();
  CHECK(j["tool"]["name"] == "resonance");
  CHECK(j["schema"] == "eigensystem");
  CHECK(j["report"]["distinct"].size() == 4);
  CHECK(j["report"]["distinct"][0]["lambda"] == 1.0);
}

TEST_CASE("error paths set codes and messages") {
  Sys sys;
  CHECK(res_eigensystem_create("disc:1", 4, &sys.h) == RES_ERR_INVALID_ARGUMENT);
  CHECK(res_eigensystem_create("interval:pi", 0, &sys.h) == RES_ERR_INVALID_ARGUMENT);
  // splitting truncation on the square
  CHECK(res_eigensystem_create("rectangle:pi,pi", 2, &sys.h) == RES_ERR_INVALID_ARGUMENT);
  CHECK(std::string(res_last_error()).find("split") != std::string::npos);
  CHECK(res_eigensystem_create(nullptr, 4, &sys.h) == RES_ERR_INVALID_ARGUMENT);
}

TEST_CASE("groups constructor captures whole multiplicity groups") {
  Sys sys;
  REQUIRE(res_eigensystem_create_groups("rectangle:pi,pi", 3, &sys.h) == RES_OK);
  int n = 0;
  res_eigensystem_mode_count(sys.h, &n);
  CHECK(n == 4);
}

TEST_CASE("decomposition and nonlinearity handles") {
  Sys sys;
  REQUIRE(res_eigensystem_create("interval:pi", 6, &sys.h) == RES_OK);
  Dec dec;
  REQUIRE(res_decomposition_create(sys.h, 2, &dec.h) == RES_OK);
  Str dj;
  REQUIRE(res_decomposition_to_json(dec.h, &dj.s) == RES_OK);
  Json j = dj.json();
  CHECK(j["report"]["dims"]["minus"] == 1);
  CHECK(j["report"]["dims"]["zero"] == 1);
  CHECK(j["report"]["dims"]["d_k"] == 2);

  Fn f;
  REQUIRE(res_nonlinearity_create(sys.h, "arctan:beta=4", &f.h) == RES_OK);
  Str info;
  REQUIRE(res_nonlinearity_info_json(f.h, &info.s) == RES_OK);
  CHECK(info.json()["nu"] == 4.0);
  Fn bad;
  CHECK(res_nonlinearity_create(sys.h, "septic", &bad.h) == RES_ERR_INVALID_ARGUMENT);
}

TEST_CASE("bound report through the C surface") {
  Sys sys;
  REQUIRE(res_eigensystem_create("interval:pi", 4, &sys.h) == RES_OK);
  Grid grid;
  REQUIRE(res_grid_create(sys.h, 0, &grid.h) == RES_OK);
  Fn f;
  REQUIRE(res_nonlinearity_create(sys.h, "saturating:beta=4", &f.h) == RES_OK);
  Str out;
  REQUIRE(res_verify_bound_json(f.h, grid.h, -2.0, 2.0, 401, &out.s) == RES_OK);
  Json j = out.json();
  CHECK(j["report"]["verdict"] == "pass");
  CHECK(j["report"]["observed_max"].get<double>() == doctest::Approx(2.0));
}

TEST_CASE("condition checks, verdict chain, and exit-code mapping") {
  Sys sys;
  REQUIRE(res_eigensystem_create("interval:pi", 6, &sys.h) == RES_OK);
  Grid grid;
  REQUIRE(res_grid_create(sys.h, 0, &grid.h) == RES_OK);
  Dec dec;
  REQUIRE(res_decomposition_create(sys.h, 1, &dec.h) == RES_OK);
  Fn f;
  REQUIRE(res_nonlinearity_create(sys.h, "arctan:beta=4", &f.h) == RES_OK);

  Str ll;
  REQUIRE(res_check_landesman_lazer_json(f.h, dec.h, grid.h, 16, 7, &ll.s) == RES_OK);
  Json jll = ll.json();
  CHECK(jll["report"]["reports"][0]["condition"] == "LL1");
  CHECK(jll["report"]["reports"][0]["verdict"] == "holds");
  CHECK(res_report_exit_code(ll.s) == 0);

  // feed the chain into the verdict
  Str verdict;
  REQUIRE(res_orbit_verdict_json(sys.h, 1, 4.0, 0, ll.s, &verdict.s) == RES_OK);
  Json jv = verdict.json();
  CHECK(jv["report"]["conclusion"] == "orbit-exists");
  CHECK(jv["report"]["exponent_invariant_set"] == 1);
  CHECK(jv["report"]["exponent_zero"] == 2);
  CHECK(res_report_exit_code(verdict.s) == 0);

  // SR on arctan is a precondition error (no f_inf)
  Str sr;
  CHECK(res_check_strong_resonance_json(f.h, grid.h, 1e6, 32, &sr.s) ==
        RES_ERR_INVALID_ARGUMENT);
  CHECK(std::string(res_last_error()).find("f_inf") != std::string::npos);

  // geometric check via params
  res_geometric_params gp;
  res_geometric_params_default(&gp);
  gp.samples_per_r = 32;
  Str g1;
  REQUIRE(res_check_geometric_json(f.h, dec.h, grid.h, 1, &gp, &g1.s) == RES_OK);
  CHECK(g1.json()["report"]["reports"][0]["verdict"] == "holds");

  // saturating family fails LL: exit code 1
  Fn sat;
  REQUIRE(res_nonlinearity_create(sys.h, "saturating:beta=4", &sat.h) == RES_OK);
  Str llsat;
  REQUIRE(res_check_landesman_lazer_json(sat.h, dec.h, grid.h, 16, 7, &llsat.s) == RES_OK);
  CHECK(res_report_exit_code(llsat.s) == 1);
}

TEST_CASE("simulate writes a CSV trajectory and a summary artifact") {
  Sys sys;
  REQUIRE(res_eigensystem_create("interval:pi", 4, &sys.h) == RES_OK);
  Grid grid;
  REQUIRE(res_grid_create(sys.h, 0, &grid.h) == RES_OK);
  Fn f;
  REQUIRE(res_nonlinearity_create(sys.h, "zero", &f.h) == RES_OK);
  res_flow_params fp;
  res_flow_params_default(&fp);
  fp.t_end = 0.5;
  fp.kernel_k = 1;
  std::vector<double> u0 = {1.0, 0.0, 0.0, 0.0};
  const char* path = "capi_traj.csv";
  Str out;
  REQUIRE(res_simulate_json(f.h, grid.h, 0, &fp, u0.data(), nullptr, path, &out.s) == RES_OK);
  Json j = out.json();
  CHECK(j["report"]["final"]["norm_h"].get<double>() ==
        doctest::Approx(std::exp(-0.5)).epsilon(1e-10));
  std::ifstream is(path);
  REQUIRE(is.good());
  std::string header;
  std::getline(is, header);
  CHECK(header == "t,u_1,u_2,u_3,u_4,norm_H,norm_alpha,norm_kernel");
  std::remove(path);

  // wave needs v0 handled (may be null = zero)
  Str wout;
  REQUIRE(res_simulate_json(f.h, grid.h, 1, &fp, u0.data(), nullptr, nullptr, &wout.s) == RES_OK);
  CHECK(wout.json()["report"]["model"] == "wave");
}

TEST_CASE("drift demo artifact") {
  Sys sys;
  REQUIRE(res_eigensystem_create("interval:pi", 6, &sys.h) == RES_OK);
  Str out;
  REQUIRE(res_drift_demo_json(sys.h, 1, 0, 10.0, 1e-2, 1.0, 0, &out.s) == RES_OK);
  CHECK(out.json()["report"]["max_deviation"].get<double>() <= 1e-10);
}

TEST_CASE("orbit search accepts a scenario and rejects unknown keys") {
  const char* scenario = R"({"domain":"interval:pi","n":8,"f":"arctan:beta=4","k":1,
    "model":"heat","T":10.0,"g_samples_per_r":32,"ll_samples":8})";
  Str out;
  REQUIRE(res_orbit_search_json(scenario, nullptr, &out.s) == RES_OK);
  Json j = out.json();
  CHECK(j["report"]["verdict"]["conclusion"] == "orbit-exists");
  CHECK(j["config"]["n"] == 8);

  Str bad;
  CHECK(res_orbit_search_json(R"({"domain":"interval:pi","banana":1})", nullptr, &bad.s) ==
        RES_ERR_INVALID_ARGUMENT);
  CHECK(std::string(res_last_error()).find("banana") != std::string::npos);
}

TEST_CASE("determinism: identical inputs give byte-identical artifacts") {
  Sys sys;
  REQUIRE(res_eigensystem_create("rectangle:pi,pi", 4, &sys.h) == RES_OK);
  Grid grid;
  REQUIRE(res_grid_create(sys.h, 0, &grid.h) == RES_OK);
  Dec dec;
  REQUIRE(res_decomposition_create(sys.h, 2, &dec.h) == RES_OK);
  Fn f;
  REQUIRE(res_nonlinearity_create(sys.h, "saturating:beta=4", &f.h) == RES_OK);
  res_geometric_params gp;
  res_geometric_params_default(&gp);
  gp.samples_per_r = 24;
  gp.seed = 2024;
  Str a, b;
  REQUIRE(res_check_geometric_json(f.h, dec.h, grid.h, 1, &gp, &a.s) == RES_OK);
  REQUIRE(res_check_geometric_json(f.h, dec.h, grid.h, 1, &gp, &b.s) == RES_OK);
  CHECK(std::string(a.s) == std::string(b.s));
}

TEST_SUITE_END();
