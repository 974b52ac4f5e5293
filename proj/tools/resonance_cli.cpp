// Command-line front end. Talks to the core exclusively through the C API
// (resonance/capi.h); JSON handling and flag parsing are local conveniences.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "resonance/capi.h"

namespace {

using Json = nlohmann::ordered_json;

struct StringGuard {
  char* s = nullptr;
  ~StringGuard() { res_string_free(s); }
};

[[noreturn]] void die(res_status rc, const std::string& where) {
  std::cerr << "error (" << where << "): " << res_last_error() << "\n";
  std::exit(rc == RES_ERR_INVALID_ARGUMENT || rc == RES_ERR_PRECONDITION ? 3 : 4);
}

void write_artifact(const std::string& path, const std::string& json) {
  if (path.empty() || path == "-") {
    std::cout << json << "\n";
    return;
  }
  std::ofstream os(path);
  if (!os) {
    std::cerr << "error: cannot write '" << path << "'\n";
    std::exit(4);
  }
  os << json << "\n";
}

// "1:0.5,3:-2" -> coefficient vector of length n (1-based mode indices)
std::vector<double> parse_coeffs(const std::string& spec, int n) {
  std::vector<double> c(static_cast<size_t>(n), 0.0);
  if (spec.empty()) return c;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    auto colon = tok.find(':');
    if (colon == std::string::npos) {
      std::cerr << "error: bad coefficient token '" << tok << "' (want j:value)\n";
      std::exit(3);
    }
    int j = std::stoi(tok.substr(0, colon));
    if (j < 1 || j > n) {
      std::cerr << "error: mode index " << j << " out of range 1.." << n << "\n";
      std::exit(3);
    }
    c[static_cast<size_t>(j - 1)] = std::stod(tok.substr(colon + 1));
  }
  return c;
}

struct SystemGuard {
  res_eigensystem* sys = nullptr;
  ~SystemGuard() { res_eigensystem_free(sys); }
};
struct GridGuard {
  res_grid* g = nullptr;
  ~GridGuard() { res_grid_free(g); }
};
struct DecompGuard {
  res_decomposition* d = nullptr;
  ~DecompGuard() { res_decomposition_free(d); }
};
struct FGuard {
  res_nonlinearity* f = nullptr;
  ~FGuard() { res_nonlinearity_free(f); }
};

res_eigensystem* make_system(const std::string& domain, int n, int groups) {
  res_eigensystem* sys = nullptr;
  res_status rc = groups > 0 ? res_eigensystem_create_groups(domain.c_str(), groups, &sys)
                             : res_eigensystem_create(domain.c_str(), n, &sys);
  if (rc != RES_OK) die(rc, "eigensystem");
  return sys;
}

int finish(const std::string& out_path, const std::string& json, const std::string& summary) {
  if (!summary.empty()) std::cout << summary << "\n";
  write_artifact(out_path, json);
  return res_report_exit_code(json.c_str());
}

std::string summarize_verdicts(const std::string& json) {
  std::ostringstream os;
  Json j = Json::parse(json);
  const Json& rep = j.contains("report") ? j.at("report") : j;
  if (rep.contains("reports")) {
    for (const auto& r : rep.at("reports"))
      os << r.at("condition").get<std::string>() << ": " << r.at("verdict").get<std::string>()
         << (r.value("sampled", false) && r.at("verdict") == "holds" ? " (sampled)" : "")
         << ", margin " << r.at("margin").dump() << "\n";
  }
  std::string s = os.str();
  if (!s.empty() && s.back() == '\n') s.pop_back();
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"resonance: spectral-Galerkin flows, resonance conditions, index bookkeeping, "
               "connecting-orbit search"};
  app.set_config("--config", "", "key=value config file (sections per subcommand)");
  app.allow_config_extras(false);
  app.require_subcommand(1);

  std::string domain = "interval:pi";
  int n_modes = 32;
  int groups = 0;
  int node_hint = 0;
  std::string out_path;
  std::string f_spec = "arctan:beta=1";
  int k = 1;
  unsigned long long seed = 0;
  double alpha = 0.9;

  auto add_common = [&](CLI::App* cmd, bool with_f) {
    cmd->add_option("--domain", domain, "interval:L or rectangle:Lx,Ly (L may be 'pi')")
        ->capture_default_str();
    cmd->add_option("--N", n_modes, "Galerkin mode count")->capture_default_str();
    cmd->add_option("--groups", groups,
                    "derive N from the first g distinct eigenvalue groups (overrides --N)");
    cmd->add_option("--Q", node_hint, "quadrature node hint (0 = default)");
    cmd->add_option("--out", out_path, "JSON artifact path ('-' or empty = stdout)");
    if (with_f) cmd->add_option("--f", f_spec, "nonlinearity spec")->capture_default_str();
  };

  // spectrum
  CLI::App* spectrum = app.add_subcommand("spectrum", "distinct eigenvalues and multiplicities");
  add_common(spectrum, false);

  // decompose
  CLI::App* dec = app.add_subcommand("decompose", "resonant spectral decomposition at lambda_k");
  add_common(dec, false);
  dec->add_option("--k", k, "resonant distinct index (1-based)")->capture_default_str();

  // check
  CLI::App* check = app.add_subcommand("check", "resonance / geometric condition checks");
  add_common(check, true);
  std::string condition = "LL";
  int samples = 64;
  int g_samples = 200;
  double b1 = 1.0, b2 = 1.0, rmin = 1.0, rmax = 256.0, s_probe = 1e6;
  check->add_option("--condition", condition, "LL | SR | G1 | G2")->capture_default_str();
  check->add_option("--k", k, "resonant distinct index")->capture_default_str();
  check->add_option("--samples", samples, "kernel sphere / s samples")->capture_default_str();
  check->add_option("--g-samples", g_samples, "samples per R for G checks")->capture_default_str();
  check->add_option("--b1", b1, "B1 radius (alpha-norm)")->capture_default_str();
  check->add_option("--b2", b2, "B2 radius (H-norm)")->capture_default_str();
  check->add_option("--rmin", rmin, "first R in the schedule")->capture_default_str();
  check->add_option("--rmax", rmax, "last R in the schedule")->capture_default_str();
  check->add_option("--s-probe", s_probe, "largest |s| probed by SR")->capture_default_str();
  check->add_option("--seed", seed, "sampling seed")->capture_default_str();
  check->add_option("--alpha", alpha, "fractional exponent for B1")->capture_default_str();

  // verify-bound
  CLI::App* vb = app.add_subcommand("verify-bound", "sampled sup-bound report for f");
  add_common(vb, true);
  double s_min = -10.0, s_max = 10.0;
  int bound_samples = 401;
  vb->add_option("--s-min", s_min)->capture_default_str();
  vb->add_option("--s-max", s_max)->capture_default_str();
  vb->add_option("--samples", bound_samples)->capture_default_str();

  // simulate
  CLI::App* sim = app.add_subcommand("simulate", "integrate the heat or wave semiflow");
  add_common(sim, true);
  std::string model = "heat", scheme = "expEuler", u0_spec = "1:1", v0_spec, csv_path;
  double lambda = 0.0, c_damp = 1.0, dt = 1e-2, t_end = 1.0, guard = 1e6;
  int stride = 1, kernel_k = 0;
  bool lambda_from_k = false;
  sim->add_option("--model", model, "heat | wave")->capture_default_str();
  sim->add_option("--lambda", lambda, "spectral shift")->capture_default_str();
  sim->add_flag("--lambda-at-k", lambda_from_k, "set lambda = lambda_k (uses --k)");
  sim->add_option("--k", k, "distinct index for --lambda-at-k / kernel diagnostics")
      ->capture_default_str();
  sim->add_option("--c", c_damp, "wave damping factor")->capture_default_str();
  sim->add_option("--dt", dt)->capture_default_str();
  sim->add_option("--T", t_end)->capture_default_str();
  sim->add_option("--scheme", scheme, "expEuler | ETDRK2")->capture_default_str();
  sim->add_option("--u0", u0_spec, "initial coefficients 'j:value,...'")->capture_default_str();
  sim->add_option("--v0", v0_spec, "initial velocity (wave)");
  sim->add_option("--csv", csv_path, "trajectory CSV path");
  sim->add_option("--stride", stride, "record every n-th step")->capture_default_str();
  sim->add_option("--guard", guard, "blow-up guard radius")->capture_default_str();
  sim->add_option("--kernel-k", kernel_k, "distinct index for the kernel diagnostic (0 = off)")
      ->capture_default_str();
  sim->add_option("--alpha", alpha, "diagnostic fractional norm")->capture_default_str();

  // drift-demo
  CLI::App* drift = app.add_subcommand("drift-demo", "kernel drift under constant kernel forcing");
  add_common(drift, false);
  int force_k = 0;
  drift->add_option("--k", k, "resonant distinct index")->capture_default_str();
  drift->add_option("--model", model, "heat | wave")->capture_default_str();
  drift->add_option("--T", t_end, "")->default_val(10.0);
  drift->add_option("--dt", dt, "")->default_val(1e-2);
  drift->add_option("--c", c_damp, "wave damping")->capture_default_str();
  drift->add_option("--force-k", force_k, "distinct group supplying the forcing (0 = k)");

  // verdict
  CLI::App* verdict = app.add_subcommand("verdict", "Conley-index case analysis for a chain");
  add_common(verdict, true);
  std::string chain_path;
  double nu = 0.0;
  bool nu_given = false;
  verdict->add_option("--k", k, "resonant distinct index")->capture_default_str();
  verdict->add_option("--model", model, "heat | wave")->capture_default_str();
  verdict->add_option("--chain", chain_path, "JSON file with condition reports")->required();
  verdict->add_option("--nu", nu, "linearization at 0 (defaults to the --f metadata)")
      ->each([&](const std::string&) { nu_given = true; });

  // orbit-search
  CLI::App* search = app.add_subcommand("orbit-search", "conditions -> verdict -> equilibria -> shooting");
  add_common(search, true);
  std::string csv_dir;
  double eps = 1e-4, shoot_tol = 1e-6;
  search->add_option("--k", k, "resonant distinct index")->capture_default_str();
  search->add_option("--model", model, "heat | wave")->capture_default_str();
  search->add_option("--c", c_damp, "wave damping")->capture_default_str();
  search->add_option("--dt", dt, "")->default_val(1e-2);
  search->add_option("--T", t_end, "")->default_val(40.0);
  search->add_option("--seed", seed, "sampling seed")->capture_default_str();
  search->add_option("--epsilon", eps, "shooting perturbation")->capture_default_str();
  search->add_option("--tol", shoot_tol, "convergence distance")->capture_default_str();
  search->add_option("--csv-dir", csv_dir, "dump every shot trajectory as CSV here");
  search->add_option("--g-samples", g_samples, "samples per R for G checks")->capture_default_str();
  search->add_option("--alpha", alpha, "fractional exponent")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  if (spectrum->parsed()) {
    SystemGuard sys{make_system(domain, n_modes, groups)};
    StringGuard out;
    res_status rc = res_eigensystem_to_json(sys.sys, &out.s);
    if (rc != RES_OK) die(rc, "spectrum");
    Json j = Json::parse(out.s);
    std::ostringstream os;
    os << "distinct eigenvalues:";
    for (const auto& g : j["report"]["distinct"])
      os << " " << g["lambda"].dump() << " (x" << g["multiplicity"].get<int>() << ")";
    std::cout << os.str() << "\n";
    write_artifact(out_path, out.s);
    return 0;
  }

  if (dec->parsed()) {
    SystemGuard sys{make_system(domain, n_modes, groups)};
    DecompGuard d;
    res_status rc = res_decomposition_create(sys.sys, k, &d.d);
    if (rc != RES_OK) die(rc, "decompose");
    StringGuard out;
    rc = res_decomposition_to_json(d.d, &out.s);
    if (rc != RES_OK) die(rc, "decompose");
    Json j = Json::parse(out.s);
    std::cout << "k=" << k << " lambda=" << j["report"]["lambda"].dump() << " dims: d_{k-1}="
              << j["report"]["dims"]["minus"].get<int>() << " dim X0="
              << j["report"]["dims"]["zero"].get<int>() << " d_k="
              << j["report"]["dims"]["d_k"].get<int>() << "\n";
    write_artifact(out_path, out.s);
    return 0;
  }

  if (vb->parsed()) {
    SystemGuard sys{make_system(domain, n_modes, groups)};
    GridGuard grid;
    res_status rc = res_grid_create(sys.sys, node_hint, &grid.g);
    if (rc != RES_OK) die(rc, "grid");
    FGuard f;
    rc = res_nonlinearity_create(sys.sys, f_spec.c_str(), &f.f);
    if (rc != RES_OK) die(rc, "nonlinearity");
    StringGuard out;
    rc = res_verify_bound_json(f.f, grid.g, s_min, s_max, bound_samples, &out.s);
    if (rc != RES_OK) die(rc, "verify-bound");
    Json j = Json::parse(out.s);
    std::cout << "bound verdict: " << j["report"]["verdict"].get<std::string>()
              << ", observed max " << j["report"]["observed_max"].dump() << "\n";
    return finish(out_path, out.s, "");
  }

  if (check->parsed()) {
    SystemGuard sys{make_system(domain, n_modes, groups)};
    GridGuard grid;
    res_status rc = res_grid_create(sys.sys, node_hint, &grid.g);
    if (rc != RES_OK) die(rc, "grid");
    FGuard f;
    rc = res_nonlinearity_create(sys.sys, f_spec.c_str(), &f.f);
    if (rc != RES_OK) die(rc, "nonlinearity");
    StringGuard out;
    if (condition == "LL") {
      DecompGuard d;
      rc = res_decomposition_create(sys.sys, k, &d.d);
      if (rc != RES_OK) die(rc, "decompose");
      rc = res_check_landesman_lazer_json(f.f, d.d, grid.g, samples, seed, &out.s);
      if (rc != RES_OK) die(rc, "check LL");
    } else if (condition == "SR") {
      rc = res_check_strong_resonance_json(f.f, grid.g, s_probe, samples, &out.s);
      if (rc != RES_OK) die(rc, "check SR");
    } else if (condition == "G1" || condition == "G2") {
      DecompGuard d;
      rc = res_decomposition_create(sys.sys, k, &d.d);
      if (rc != RES_OK) die(rc, "decompose");
      res_geometric_params gp;
      res_geometric_params_default(&gp);
      gp.b1_radius = b1;
      gp.b2_radius = b2;
      gp.r_min = rmin;
      gp.r_max = rmax;
      gp.samples_per_r = g_samples;
      gp.seed = seed;
      gp.alpha = alpha;
      rc = res_check_geometric_json(f.f, d.d, grid.g, condition == "G1" ? 1 : 2, &gp, &out.s);
      if (rc != RES_OK) die(rc, "check G");
    } else {
      std::cerr << "error: --condition must be LL, SR, G1 or G2\n";
      return 3;
    }
    return finish(out_path, out.s, summarize_verdicts(out.s));
  }

  if (sim->parsed()) {
    SystemGuard sys{make_system(domain, n_modes, groups)};
    GridGuard grid;
    res_status rc = res_grid_create(sys.sys, node_hint, &grid.g);
    if (rc != RES_OK) die(rc, "grid");
    FGuard f;
    rc = res_nonlinearity_create(sys.sys, f_spec.c_str(), &f.f);
    if (rc != RES_OK) die(rc, "nonlinearity");
    int n = 0;
    res_eigensystem_mode_count(sys.sys, &n);
    res_flow_params fp;
    res_flow_params_default(&fp);
    if (lambda_from_k) {
      rc = res_eigensystem_eigenvalue(sys.sys, k, &lambda);
      if (rc != RES_OK) die(rc, "lambda-at-k");
    }
    fp.lambda = lambda;
    fp.c = c_damp;
    fp.dt = dt;
    fp.t_end = t_end;
    fp.scheme = scheme == "ETDRK2" || scheme == "etdrk2" ? 1 : 0;
    fp.guard_radius = guard;
    fp.record_stride = stride;
    fp.alpha = alpha;
    fp.kernel_k = kernel_k;
    std::vector<double> u0 = parse_coeffs(u0_spec, n);
    std::vector<double> v0 = parse_coeffs(v0_spec, n);
    StringGuard out;
    rc = res_simulate_json(f.f, grid.g, model == "wave" ? 1 : 0, &fp, u0.data(),
                           v0_spec.empty() ? nullptr : v0.data(),
                           csv_path.empty() ? nullptr : csv_path.c_str(), &out.s);
    if (rc != RES_OK) die(rc, "simulate");
    Json j = Json::parse(out.s);
    std::cout << "final t=" << j["report"]["final"]["t"].dump() << " |u|_H="
              << j["report"]["final"]["norm_h"].dump()
              << (j["report"]["blew_up"].get<bool>() ? " [blow-up guard hit]" : "")
              << (j["report"]["nan_abort"].get<bool>() ? " [aborted on NaN]" : "") << "\n";
    write_artifact(out_path, out.s);
    return 0;
  }

  if (drift->parsed()) {
    SystemGuard sys{make_system(domain, n_modes, groups)};
    StringGuard out;
    res_status rc = res_drift_demo_json(sys.sys, k, model == "wave" ? 1 : 0, t_end, dt, c_damp,
                                        force_k, &out.s);
    if (rc != RES_OK) die(rc, "drift-demo");
    Json j = Json::parse(out.s);
    double dev = j["report"]["max_deviation"].get<double>();
    std::cout << "max deviation " << j["report"]["max_deviation"].dump() << "\n";
    write_artifact(out_path, out.s);
    return dev <= 1e-8 ? 0 : 1;
  }

  if (verdict->parsed()) {
    SystemGuard sys{make_system(domain, n_modes, groups)};
    if (!nu_given) {
      FGuard f;
      res_status rc = res_nonlinearity_create(sys.sys, f_spec.c_str(), &f.f);
      if (rc != RES_OK) die(rc, "nonlinearity");
      StringGuard info;
      rc = res_nonlinearity_info_json(f.f, &info.s);
      if (rc != RES_OK) die(rc, "nonlinearity info");
      nu = Json::parse(info.s)["nu"].get<double>();
    }
    std::ifstream is(chain_path);
    if (!is) {
      std::cerr << "error: cannot read chain file '" << chain_path << "'\n";
      return 3;
    }
    std::stringstream buf;
    buf << is.rdbuf();
    StringGuard out;
    res_status rc = res_orbit_verdict_json(sys.sys, k, nu, model == "wave" ? 1 : 0,
                                           buf.str().c_str(), &out.s);
    if (rc != RES_OK) die(rc, "verdict");
    Json j = Json::parse(out.s);
    for (const auto& line : j["report"]["narrative"])
      std::cout << "  " << line.get<std::string>() << "\n";
    std::cout << "conclusion: " << j["report"]["conclusion"].get<std::string>() << "\n";
    return finish(out_path, out.s, "");
  }

  if (search->parsed()) {
    if (groups > 0) {  // resolve the truncation that closes the requested groups
      SystemGuard sys{make_system(domain, n_modes, groups)};
      res_eigensystem_mode_count(sys.sys, &n_modes);
    }
    Json sc;
    sc["domain"] = domain;
    sc["n"] = n_modes;
    sc["q"] = node_hint;
    sc["f"] = f_spec;
    sc["k"] = k;
    sc["model"] = model;
    sc["c"] = c_damp;
    sc["dt"] = dt;
    sc["T"] = t_end;
    sc["alpha"] = alpha;
    sc["seed"] = seed;
    sc["epsilon"] = eps;
    sc["shoot_tol"] = shoot_tol;
    sc["g_samples_per_r"] = g_samples;
    StringGuard out;
    res_status rc = res_orbit_search_json(sc.dump().c_str(),
                                          csv_dir.empty() ? nullptr : csv_dir.c_str(), &out.s);
    if (rc != RES_OK) die(rc, "orbit-search");
    Json j = Json::parse(out.s);
    const Json& rep = j["report"];
    for (const auto& line : rep["verdict"]["narrative"])
      std::cout << "  " << line.get<std::string>() << "\n";
    std::cout << "conclusion: " << rep["verdict"]["conclusion"].get<std::string>() << "\n";
    std::cout << "equilibria: " << rep["equilibria"].size() << ", shots: " << rep["shots"].size()
              << "\n";
    std::cout << "witness: " << rep["best_witness"].get<std::string>() << "\n";
    write_artifact(out_path, out.s);
    Json verdict_node = rep["verdict"];
    return verdict_node["conclusion"] == "orbit-exists" ? 0 : 2;
  }

  return 3;
}
