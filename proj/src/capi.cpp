#include "resonance/capi.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <string>

#include "resonance/json_io.hpp"
#include "resonance/version.hpp"

using namespace resonance;

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

res_status fail(res_status code, const std::string& msg) {
  g_last_error = msg;
  return code;
}

template <typename Fn>
res_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const EvaluationError& e) {
    return fail(RES_ERR_NUMERIC, e.what());
  } catch (const ResonantAtZero& e) {
    return fail(RES_ERR_PRECONDITION, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(RES_ERR_INVALID_ARGUMENT, e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(RES_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::ios_base::failure& e) {
    return fail(RES_ERR_IO, e.what());
  } catch (const std::exception& e) {
    return fail(RES_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(RES_ERR_INTERNAL, "unknown error");
  }
}

res_status emit(char** json_out, const Json& artifact) {
  if (!json_out) return fail(RES_ERR_INVALID_ARGUMENT, "null output pointer");
  *json_out = dup_string(artifact.dump(2));
  if (!*json_out) return fail(RES_ERR_INTERNAL, "allocation failed");
  return RES_OK;
}

}  // namespace

struct res_eigensystem {
  EigenSystemPtr sys;
  std::string domain_spec;
};
struct res_decomposition {
  SpectralDecomposition decomp;
};
struct res_grid {
  QuadratureGrid grid;
  int node_hint = 0;
};
struct res_nonlinearity {
  Nonlinearity f;
};

extern "C" {

const char* res_version(void) { return RESONANCE_VERSION; }

const char* res_last_error(void) { return g_last_error.c_str(); }

void res_string_free(char* s) { std::free(s); }

res_status res_eigensystem_create(const char* domain_spec, int n_modes, res_eigensystem** out) {
  return guarded([&]() {
    if (!domain_spec || !out) return fail(RES_ERR_INVALID_ARGUMENT, "null argument");
    auto* h = new res_eigensystem;
    h->domain_spec = domain_spec;
    h->sys = build_eigensystem(parse_domain(domain_spec), n_modes);
    *out = h;
    return RES_OK;
  });
}

res_status res_eigensystem_create_groups(const char* domain_spec, int n_groups,
                                         res_eigensystem** out) {
  return guarded([&]() {
    if (!domain_spec || !out) return fail(RES_ERR_INVALID_ARGUMENT, "null argument");
    SpectralDomain d = parse_domain(domain_spec);
    return res_eigensystem_create(domain_spec, mode_count_for_groups(d, n_groups), out);
  });
}

void res_eigensystem_free(res_eigensystem* sys) { delete sys; }

res_status res_eigensystem_mode_count(const res_eigensystem* sys, int* out) {
  if (!sys || !out) return fail(RES_ERR_INVALID_ARGUMENT, "null argument");
  *out = sys->sys->count;
  return RES_OK;
}

res_status res_eigensystem_distinct_count(const res_eigensystem* sys, int* out) {
  if (!sys || !out) return fail(RES_ERR_INVALID_ARGUMENT, "null argument");
  *out = sys->sys->distinct_count();
  return RES_OK;
}

res_status res_eigensystem_eigenvalue(const res_eigensystem* sys, int k, double* out) {
  return guarded([&]() {
    if (!sys || !out) return fail(RES_ERR_INVALID_ARGUMENT, "null argument");
    if (k < 1 || k > sys->sys->distinct_count())
      return fail(RES_ERR_INVALID_ARGUMENT, "distinct index k out of range");
    *out = sys->sys->distinct[static_cast<size_t>(k - 1)].lambda;
    return RES_OK;
  });
}

res_status res_eigensystem_to_json(const res_eigensystem* sys, char** json_out) {
  return guarded([&]() {
    if (!sys) return fail(RES_ERR_INVALID_ARGUMENT, "null eigensystem");
    Json config = Json{{"domain", sys->domain_spec}, {"n", sys->sys->count}};
    return emit(json_out, wrap_artifact("eigensystem", config, to_json(*sys->sys)));
  });
}

res_status res_decomposition_create(const res_eigensystem* sys, int k, res_decomposition** out) {
  return guarded([&]() {
    if (!sys || !out) return fail(RES_ERR_INVALID_ARGUMENT, "null argument");
    auto* h = new res_decomposition{decompose(sys->sys, k)};
    *out = h;
    return RES_OK;
  });
}

void res_decomposition_free(res_decomposition* d) { delete d; }

res_status res_decomposition_to_json(const res_decomposition* d, char** json_out) {
  return guarded([&]() {
    if (!d) return fail(RES_ERR_INVALID_ARGUMENT, "null decomposition");
    Json config = Json{{"n", d->decomp.system->count}, {"k", d->decomp.k}};
    return emit(json_out, wrap_artifact("decomposition", config, to_json(d->decomp)));
  });
}

res_status res_grid_create(const res_eigensystem* sys, int node_hint, res_grid** out) {
  return guarded([&]() {
    if (!sys || !out) return fail(RES_ERR_INVALID_ARGUMENT, "null argument");
    auto* h = new res_grid;
    h->grid = build_grid(sys->sys, node_hint);
    h->node_hint = node_hint;
    *out = h;
    return RES_OK;
  });
}

void res_grid_free(res_grid* g) { delete g; }

res_status res_nonlinearity_create(const res_eigensystem* sys, const char* spec,
                                   res_nonlinearity** out) {
  return guarded([&]() {
    if (!sys || !spec || !out) return fail(RES_ERR_INVALID_ARGUMENT, "null argument");
    auto* h = new res_nonlinearity{parse_nonlinearity(spec, sys->sys)};
    *out = h;
    return RES_OK;
  });
}

void res_nonlinearity_free(res_nonlinearity* f) { delete f; }

res_status res_nonlinearity_info_json(const res_nonlinearity* f, char** json_out) {
  return guarded([&]() {
    if (!f) return fail(RES_ERR_INVALID_ARGUMENT, "null nonlinearity");
    Json j;
    j["spec"] = f->f.spec;
    j["nu"] = f->f.nu;
    j["bounded"] = f->f.bounded;
    if (f->f.bound_m) j["declared_m"] = *f->f.bound_m;
    j["zero_at_origin"] = f->f.zero_at_origin;
    j["has_limits"] = f->f.limit_plus.has_value() && f->f.limit_minus.has_value();
    j["has_f_inf"] = f->f.limit_inf.has_value();
    j["has_envelope"] = f->f.envelope.has_value();
    return emit(json_out, j);
  });
}

res_status res_verify_bound_json(const res_nonlinearity* f, const res_grid* grid, double s_min,
                                 double s_max, int samples, char** json_out) {
  return guarded([&]() {
    if (!f || !grid) return fail(RES_ERR_INVALID_ARGUMENT, "null argument");
    BoundReport rep = verify_bound(f->f, grid->grid, s_min, s_max, samples);
    Json config = Json{{"f", f->f.spec}, {"s_min", s_min}, {"s_max", s_max}, {"samples", samples}};
    return emit(json_out, wrap_artifact("bound_report", config, to_json(rep)));
  });
}

res_status res_check_landesman_lazer_json(const res_nonlinearity* f, const res_decomposition* d,
                                          const res_grid* grid, int sphere_samples,
                                          unsigned long long seed, char** json_out) {
  return guarded([&]() {
    if (!f || !d || !grid) return fail(RES_ERR_INVALID_ARGUMENT, "null argument");
    LandesmanLazerResult res =
        check_landesman_lazer(f->f, d->decomp, grid->grid, sphere_samples, seed);
    Json config = Json{{"f", f->f.spec}, {"k", d->decomp.k}, {"samples", sphere_samples},
                       {"seed", seed}};
    Json payload;
    payload["reports"] = Json::array({to_json(res.ll1), to_json(res.ll2)});
    return emit(json_out, wrap_artifact("condition_report", config, payload));
  });
}

res_status res_check_strong_resonance_json(const res_nonlinearity* f, const res_grid* grid,
                                           double s_probe, int samples, char** json_out) {
  return guarded([&]() {
    if (!f || !grid) return fail(RES_ERR_INVALID_ARGUMENT, "null argument");
    ConditionReport rep = check_strong_resonance(f->f, grid->grid, s_probe, samples);
    Json config = Json{{"f", f->f.spec}, {"s_probe", s_probe}, {"samples", samples}};
    Json payload;
    payload["reports"] = Json::array({to_json(rep)});
    return emit(json_out, wrap_artifact("condition_report", config, payload));
  });
}

void res_geometric_params_default(res_geometric_params* p) {
  if (!p) return;
  p->b1_radius = 1.0;
  p->b2_radius = 1.0;
  p->r_min = 1.0;
  p->r_max = 256.0;
  p->samples_per_r = 200;
  p->seed = 0;
  p->alpha = 0.9;
}

res_status res_check_geometric_json(const res_nonlinearity* f, const res_decomposition* d,
                                    const res_grid* grid, int which,
                                    const res_geometric_params* params, char** json_out) {
  return guarded([&]() {
    if (!f || !d || !grid || !params) return fail(RES_ERR_INVALID_ARGUMENT, "null argument");
    if (which != 1 && which != 2) return fail(RES_ERR_INVALID_ARGUMENT, "which must be 1 or 2");
    GeometricParams gp;
    gp.b1_radius = params->b1_radius;
    gp.b2_radius = params->b2_radius;
    gp.r_schedule.clear();
    for (double r = params->r_min; r <= params->r_max * (1 + 1e-12); r *= 2)
      gp.r_schedule.push_back(r);
    gp.samples_per_r = params->samples_per_r;
    gp.seed = params->seed;
    gp.alpha = params->alpha;
    ConditionReport rep = check_geometric(f->f, d->decomp, grid->grid,
                                          which == 1 ? Condition::G1 : Condition::G2, gp);
    Json config = Json{{"f", f->f.spec},        {"k", d->decomp.k},
                       {"which", which},        {"b1_radius", gp.b1_radius},
                       {"b2_radius", gp.b2_radius}, {"r_min", params->r_min},
                       {"r_max", params->r_max},    {"samples_per_r", gp.samples_per_r},
                       {"seed", gp.seed},           {"alpha", gp.alpha}};
    Json payload;
    payload["reports"] = Json::array({to_json(rep)});
    return emit(json_out, wrap_artifact("condition_report", config, payload));
  });
}

void res_flow_params_default(res_flow_params* p) {
  if (!p) return;
  p->lambda = 0.0;
  p->c = 1.0;
  p->dt = 1e-2;
  p->t_end = 1.0;
  p->scheme = 0;
  p->guard_radius = 1e6;
  p->record_stride = 1;
  p->alpha = 0.9;
  p->kernel_k = 0;
}

res_status res_simulate_json(const res_nonlinearity* f, const res_grid* grid, int model,
                             const res_flow_params* params, const double* u0, const double* v0,
                             const char* csv_path, char** json_out) {
  return guarded([&]() {
    if (!f || !grid || !params || !u0) return fail(RES_ERR_INVALID_ARGUMENT, "null argument");
    if (model != 0 && model != 1) return fail(RES_ERR_INVALID_ARGUMENT, "model must be 0 or 1");
    const EigenSystemPtr& sys = grid->grid.system;
    FlowParams fp;
    fp.lambda = params->lambda;
    fp.c = params->c;
    fp.dt = params->dt;
    fp.t_end = params->t_end;
    fp.scheme = params->scheme == 1 ? Scheme::Etdrk2 : Scheme::ExpEuler;
    fp.guard_radius = params->guard_radius;
    fp.record_stride = params->record_stride;
    fp.alpha = params->alpha;
    if (params->kernel_k > 0) fp.kernel_modes = decompose(sys, params->kernel_k).zero_modes;

    ModalField u(sys->count);
    for (int j = 0; j < sys->count; ++j) u.c[static_cast<size_t>(j)] = u0[j];
    Trajectory traj;
    if (model == 0) {
      traj = heat_flow(f->f, grid->grid, u, fp);
    } else {
      WaveState w0;
      w0.u = u;
      w0.v = ModalField(sys->count);
      if (v0)
        for (int j = 0; j < sys->count; ++j) w0.v.c[static_cast<size_t>(j)] = v0[j];
      traj = wave_flow(f->f, grid->grid, w0, fp);
    }
    if (csv_path) write_trajectory_csv_file(traj, csv_path);
    Json config;
    config["f"] = f->f.spec;
    config["model"] = model == 0 ? "heat" : "wave";
    config["lambda"] = fp.lambda;
    config["c"] = fp.c;
    config["dt"] = fp.dt;
    config["T"] = fp.t_end;
    config["scheme"] = to_string(fp.scheme);
    config["guard_radius"] = fp.guard_radius;
    config["record_stride"] = fp.record_stride;
    config["alpha"] = fp.alpha;
    config["kernel_k"] = params->kernel_k;
    config["u0"] = u.c;
    if (csv_path) config["csv"] = csv_path;
    return emit(json_out, wrap_artifact("trajectory_summary", config, trajectory_summary(traj)));
  });
}

res_status res_drift_demo_json(const res_eigensystem* sys, int k, int model, double t_end,
                               double dt, double c, int force_group, char** json_out) {
  return guarded([&]() {
    if (!sys) return fail(RES_ERR_INVALID_ARGUMENT, "null eigensystem");
    DriftReport rep = drift_demo(sys->sys, k, model == 1 ? Model::Wave : Model::Heat, t_end, dt,
                                 c, force_group);
    Json config = Json{{"domain", sys->domain_spec}, {"n", sys->sys->count},   {"k", k},
                       {"model", model == 1 ? "wave" : "heat"}, {"T", t_end},  {"dt", dt},
                       {"c", c},                     {"force_group", force_group}};
    return emit(json_out, wrap_artifact("drift_report", config, to_json(rep)));
  });
}

res_status res_orbit_verdict_json(const res_eigensystem* sys, int k, double nu, int model,
                                  const char* condition_chain_json, char** json_out) {
  return guarded([&]() {
    if (!sys || !condition_chain_json) return fail(RES_ERR_INVALID_ARGUMENT, "null argument");
    Json chain_json = Json::parse(condition_chain_json);
    // Accept a bare array, {"reports": [...]}, or a wrapped artifact.
    const Json* arr = &chain_json;
    if (arr->is_object() && arr->contains("report")) arr = &arr->at("report");
    if (arr->is_object() && arr->contains("reports")) arr = &arr->at("reports");
    if (!arr->is_array())
      return fail(RES_ERR_INVALID_ARGUMENT, "condition chain must be an array of reports");
    std::vector<ConditionReport> chain;
    for (const auto& item : *arr) {
      ConditionReport r;
      r.condition = parse_condition(item.at("condition").get<std::string>());
      std::string verdict = item.at("verdict").get<std::string>();
      r.verdict = verdict == "holds"  ? ConditionVerdict::Holds
                  : verdict == "fails" ? ConditionVerdict::Fails
                                       : ConditionVerdict::Inconclusive;
      r.sampled = item.value("sampled", false);
      r.margin = item.value("margin", 0.0);
      chain.push_back(std::move(r));
    }
    ConleyVerdict verdict = orbit_verdict_from_chain(*sys->sys, k, nu, model == 1 ? Model::Wave
                                                                                  : Model::Heat,
                                                     chain);
    Json config = Json{{"domain", sys->domain_spec}, {"n", sys->sys->count}, {"k", k},
                       {"nu", nu},                   {"model", model == 1 ? "wave" : "heat"}};
    return emit(json_out, wrap_artifact("conley_verdict", config, to_json(verdict)));
  });
}

res_status res_orbit_search_json(const char* scenario_json, const char* csv_dir,
                                 char** json_out) {
  return guarded([&]() {
    if (!scenario_json) return fail(RES_ERR_INVALID_ARGUMENT, "null scenario");
    Scenario sc = scenario_from_json(Json::parse(scenario_json));
    ConnectionReport rep = search_connections(sc);
    Json payload = to_json(rep);
    if (csv_dir) {
      // Re-run the recorded shots' trajectories for CSV export is wasteful;
      // instead the report already carries terminal data. The CSV dump here
      // writes one file per shot direction from a fresh integration.
      EigenSystemPtr system = build_eigensystem(sc.domain, sc.n_modes);
      QuadratureGrid grid = build_grid(system, sc.node_hint);
      Nonlinearity f = parse_nonlinearity(sc.f_spec, system);
      SpectralDecomposition decomp = decompose(system, sc.k);
      FlowParams fp;
      fp.lambda = decomp.lambda();
      fp.c = sc.c;
      fp.dt = sc.dt;
      fp.t_end = sc.t_end;
      fp.guard_radius = sc.guard_radius;
      fp.record_stride = std::max(1, static_cast<int>(std::llround(sc.t_end / sc.dt)) / 512);
      fp.kernel_modes = decomp.zero_modes;
      for (const Shot& s : rep.shots) {
        ModalField start(system->count);
        for (const Equilibrium& e : rep.equilibria)
          if (e.label == s.base_label) start = e.state;
        for (size_t j = 0; j < start.c.size(); ++j) start.c[j] += s.epsilon * s.direction[j];
        Trajectory traj;
        if (sc.model == Model::Heat) {
          traj = heat_flow(f, grid, start, fp);
        } else {
          WaveState w0;
          w0.u = start;
          w0.v = ModalField::zeros(system->count);
          traj = wave_flow(f, grid, w0, fp);
        }
        write_trajectory_csv_file(traj, std::string(csv_dir) + "/shot_" +
                                            std::to_string(s.index) + ".csv");
      }
    }
    return emit(json_out, wrap_artifact("connection_report", to_json(sc), std::move(payload)));
  });
}

int res_report_exit_code(const char* report_json) {
  if (!report_json) return 3;
  try {
    return report_exit_code(Json::parse(report_json));
  } catch (...) {
    return 3;
  }
}

}  // extern "C"
