#include "resonance/json_io.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "resonance/version.hpp"

namespace resonance {

Json to_json(const SpectralDomain& d) {
  Json j;
  if (d.kind == DomainKind::Interval) {
    j["kind"] = "interval";
    j["length"] = d.lx;
  } else {
    j["kind"] = "rectangle";
    j["length_x"] = d.lx;
    j["length_y"] = d.ly;
  }
  return j;
}

Json to_json(const EigenSystem& sys) {
  Json j;
  j["domain"] = to_json(sys.domain);
  j["n_modes"] = sys.count;
  j["commensurate"] = sys.commensurate;
  Json modes = Json::array();
  for (const Mode& m : sys.modes) {
    Json mj;
    mj["mu"] = m.mu;
    mj["jx"] = m.jx;
    if (m.jy > 0) mj["jy"] = m.jy;
    if (sys.commensurate) mj["lattice_key"] = m.key;
    modes.push_back(mj);
  }
  j["modes"] = modes;
  Json distinct = Json::array();
  Json cumulative = Json::array();
  int running = 0;
  for (const DistinctGroup& g : sys.distinct) {
    Json gj;
    gj["lambda"] = g.lambda;
    if (sys.commensurate) gj["lattice_key"] = g.key;
    gj["multiplicity"] = g.multiplicity();
    Json idx = Json::array();
    for (int m : g.modes) idx.push_back(m + 1);  // 1-based in reports
    gj["modes"] = idx;
    distinct.push_back(gj);
    running += g.multiplicity();
    cumulative.push_back(running);
  }
  j["distinct"] = distinct;
  j["cumulative_dims"] = cumulative;  // d_1..d_L
  return j;
}

Json to_json(const SpectralDecomposition& d) {
  Json j;
  j["k"] = d.k;
  j["lambda"] = d.lambda();
  j["dims"] = Json{{"minus", d.dim_minus()}, {"zero", d.dim_zero()}, {"d_k", d.d_k()}};
  auto idx = [](const std::vector<int>& v) {
    Json a = Json::array();
    for (int m : v) a.push_back(m + 1);
    return a;
  };
  j["index_sets"] = Json{{"minus", idx(d.minus_modes)}, {"zero", idx(d.zero_modes)},
                         {"plus", idx(d.plus_modes)}};
  return j;
}

Json to_json(const BoundReport& r) {
  Json j;
  j["verdict"] = to_string(r.verdict);
  if (r.declared_m) j["declared_m"] = *r.declared_m;
  j["observed_max"] = r.observed_max;
  j["argmax"] = Json{{"x", r.arg_x}, {"y", r.arg_y}, {"s", r.arg_s}};
  j["s_range"] = Json::array({r.s_min, r.s_max});
  j["s_samples"] = r.s_samples;
  j["nodes"] = r.nodes;
  j["lipschitz_quotient_max"] = r.lipschitz_quotient_max;
  j["nu_declared"] = r.nu_declared;
  j["nu_probe_max_dev"] = r.nu_probe_max_dev;
  j["origin_max_abs"] = r.origin_max_abs;
  return j;
}

Json to_json(const ConditionReport& r) {
  Json j;
  j["condition"] = to_string(r.condition);
  j["verdict"] = to_string(r.verdict);
  j["sampled"] = r.sampled;
  j["margin"] = r.margin;
  Json ws = Json::array();
  for (const auto& w : r.witnesses) {
    Json wj;
    wj["point"] = w.point;
    wj["value"] = w.value;
    wj["note"] = w.note;
    ws.push_back(wj);
  }
  j["witnesses"] = ws;
  Json p;
  p["f"] = r.f_spec;
  p["nu"] = r.nu;
  if (r.k > 0) p["k"] = r.k;
  p["samples"] = r.samples;
  p["seed"] = r.seed;
  switch (r.condition) {
    case Condition::G1:
    case Condition::G2:
      p["b1_radius"] = r.b1_radius;
      p["b2_radius"] = r.b2_radius;
      p["alpha"] = r.alpha;
      p["r_schedule"] = r.r_schedule;
      p["rho_multipliers"] = r.rho_multipliers;
      p["r_found"] = r.r_found;
      p["per_r_violations"] = r.per_r_violations;
      p["per_r_min_slack"] = r.per_r_min_slack;
      p["per_r_rho_min_slack"] = r.per_r_rho_min_slack;
      break;
    case Condition::SR1:
    case Condition::SR2:
      p["s_probe"] = r.s_probe;
      p["envelope_slack"] = r.envelope_slack;
      p["integral_f_inf"] = r.integral_f_inf;
      break;
    default:
      break;
  }
  j["params"] = p;
  return j;
}

Json to_json(const ConleyVerdict& v) {
  Json j;
  j["model"] = to_string(v.model);
  j["k"] = v.k;
  j["lambda"] = v.lambda;
  j["nu"] = v.nu;
  j["route"] = to_string(v.route);
  j["route_sampled"] = v.route_sampled;
  j["geometric"] = to_string(v.geometric);
  j["exponent_invariant_set"] = v.exponent_invariant_set;
  if (v.exponent_zero)
    j["exponent_zero"] = *v.exponent_zero;
  else
    j["exponent_zero"] = nullptr;
  j["resonant_at_zero"] = v.resonant_at_zero;
  j["matched_case"] = to_string(v.matched_case);
  j["conclusion"] = v.orbit_exists ? "orbit-exists" : "no-conclusion";
  j["narrative"] = v.narrative;
  return j;
}

Json to_json(const Equilibrium& e) {
  Json j;
  j["label"] = e.label;
  j["norm_h"] = h_norm(e.state);
  j["residual"] = e.residual;
  j["unstable_count"] = e.unstable_count;
  Json rates = Json::array();
  for (size_t i = 0; i < e.rates.size() && i < 8; ++i) rates.push_back(e.rates[i]);
  j["leading_rates"] = rates;
  j["coefficients"] = e.state.c;
  return j;
}

Json to_json(const Shot& s) {
  Json j;
  j["index"] = s.index;
  j["base"] = s.base_label;
  j["epsilon"] = s.epsilon;
  j["direction"] = s.direction;
  j["outcome"] = to_string(s.outcome);
  j["target"] = s.target;
  j["terminal_distance"] = s.terminal_distance;
  j["drift"] = Json{{"slope", s.drift_slope}, {"r2", s.drift_r2}};
  j["t_end"] = s.t_end;
  j["integrator_failed"] = s.integrator_failed;
  if (!s.detail.empty()) j["detail"] = s.detail;
  return j;
}

Json to_json(const DriftReport& r) {
  Json j;
  j["model"] = to_string(r.model);
  j["k"] = r.k;
  j["force_group"] = r.force_group;
  j["resonant"] = r.resonant;
  j["lambda"] = r.lambda;
  j["c"] = r.c;
  j["T"] = r.t_end;
  j["dt"] = r.dt;
  j["max_deviation"] = r.max_deviation;
  if (r.resonant) {
    j["slope"] = r.slope;
    j["expected_slope"] = r.expected_slope;
    j["fit_r2"] = r.fit_r2;
  } else {
    j["saturation_value"] = r.saturation_value;
    j["saturation_expected"] = r.saturation_expected;
    j["max_kernel_abs"] = r.max_kernel_abs;
  }
  return j;
}

Json to_json(const Scenario& sc) {
  Json j;
  j["domain"] = to_json(sc.domain);
  j["n"] = sc.n_modes;
  j["q"] = sc.node_hint;
  j["f"] = sc.f_spec;
  j["k"] = sc.k;
  j["model"] = to_string(sc.model);
  j["c"] = sc.c;
  j["dt"] = sc.dt;
  j["T"] = sc.t_end;
  j["alpha"] = sc.alpha;
  j["b1_radius"] = sc.b1_radius;
  j["b2_radius"] = sc.b2_radius;
  j["r_min"] = sc.r_min;
  j["r_max"] = sc.r_max;
  j["ll_samples"] = sc.ll_samples;
  j["g_samples_per_r"] = sc.g_samples_per_r;
  j["sr_s_probe"] = sc.sr_s_probe;
  j["sr_samples"] = sc.sr_samples;
  j["seed"] = sc.seed;
  j["newton_tol"] = sc.newton_tol;
  j["newton_max_iter"] = sc.newton_max_iter;
  j["epsilon"] = sc.epsilon;
  j["shoot_tol"] = sc.shoot_tol;
  j["guard_radius"] = sc.guard_radius;
  return j;
}

Scenario scenario_from_json(const Json& j) {
  Scenario sc;
  std::vector<std::string> known = {"domain", "n", "q", "f", "k", "model", "c", "dt", "T",
                                    "alpha", "b1_radius", "b2_radius", "r_min", "r_max",
                                    "ll_samples", "g_samples_per_r", "sr_s_probe", "sr_samples",
                                    "seed", "newton_tol", "newton_max_iter", "epsilon",
                                    "shoot_tol", "guard_radius"};
  for (auto it = j.begin(); it != j.end(); ++it)
    if (std::find(known.begin(), known.end(), it.key()) == known.end())
      throw std::invalid_argument("scenario: unknown key '" + it.key() + "'");

  if (j.contains("domain")) {
    const Json& d = j.at("domain");
    if (d.is_string()) {
      sc.domain = parse_domain(d.get<std::string>());
    } else {
      std::string kind = d.at("kind").get<std::string>();
      if (kind == "interval")
        sc.domain = SpectralDomain::interval(d.at("length").get<double>());
      else if (kind == "rectangle" || kind == "rect")
        sc.domain = SpectralDomain::rectangle(d.at("length_x").get<double>(),
                                              d.at("length_y").get<double>());
      else
        throw std::invalid_argument("scenario: unknown domain kind '" + kind + "'");
    }
  }
  if (j.contains("n")) sc.n_modes = j.at("n").get<int>();
  if (j.contains("q")) sc.node_hint = j.at("q").get<int>();
  if (j.contains("f")) sc.f_spec = j.at("f").get<std::string>();
  if (j.contains("k")) sc.k = j.at("k").get<int>();
  if (j.contains("model")) {
    std::string m = j.at("model").get<std::string>();
    if (m == "heat")
      sc.model = Model::Heat;
    else if (m == "wave")
      sc.model = Model::Wave;
    else
      throw std::invalid_argument("scenario: unknown model '" + m + "'");
  }
  if (j.contains("c")) sc.c = j.at("c").get<double>();
  if (j.contains("dt")) sc.dt = j.at("dt").get<double>();
  if (j.contains("T")) sc.t_end = j.at("T").get<double>();
  if (j.contains("alpha")) sc.alpha = j.at("alpha").get<double>();
  if (j.contains("b1_radius")) sc.b1_radius = j.at("b1_radius").get<double>();
  if (j.contains("b2_radius")) sc.b2_radius = j.at("b2_radius").get<double>();
  if (j.contains("r_min")) sc.r_min = j.at("r_min").get<double>();
  if (j.contains("r_max")) sc.r_max = j.at("r_max").get<double>();
  if (j.contains("ll_samples")) sc.ll_samples = j.at("ll_samples").get<int>();
  if (j.contains("g_samples_per_r")) sc.g_samples_per_r = j.at("g_samples_per_r").get<int>();
  if (j.contains("sr_s_probe")) sc.sr_s_probe = j.at("sr_s_probe").get<double>();
  if (j.contains("sr_samples")) sc.sr_samples = j.at("sr_samples").get<int>();
  if (j.contains("seed")) sc.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("newton_tol")) sc.newton_tol = j.at("newton_tol").get<double>();
  if (j.contains("newton_max_iter")) sc.newton_max_iter = j.at("newton_max_iter").get<int>();
  if (j.contains("epsilon")) sc.epsilon = j.at("epsilon").get<double>();
  if (j.contains("shoot_tol")) sc.shoot_tol = j.at("shoot_tol").get<double>();
  if (j.contains("guard_radius")) sc.guard_radius = j.at("guard_radius").get<double>();
  return sc;
}

Json to_json(const ConnectionReport& r) {
  Json j;
  j["scenario"] = to_json(r.scenario);
  Json chain = Json::array();
  for (const auto& c : r.chain) chain.push_back(to_json(c));
  j["condition_chain"] = chain;
  j["skipped_checks"] = r.skipped_checks;
  j["verdict"] = to_json(r.verdict);
  Json eqs = Json::array();
  for (const auto& e : r.equilibria) eqs.push_back(to_json(e));
  j["equilibria"] = eqs;
  Json shots = Json::array();
  for (const auto& s : r.shots) shots.push_back(to_json(s));
  j["shots"] = shots;
  j["best_witness"] = r.best_witness;
  return j;
}

Json trajectory_summary(const Trajectory& t) {
  Json j;
  j["model"] = to_string(t.model);
  j["scheme"] = to_string(t.params.scheme);
  j["lambda"] = t.params.lambda;
  if (t.model == Model::Wave) j["c"] = t.params.c;
  j["dt"] = t.params.dt;
  j["T"] = t.params.t_end;
  j["steps_taken"] = t.steps_taken;
  j["samples"] = t.samples.size();
  j["blew_up"] = t.blew_up;
  j["nan_abort"] = t.nan_abort;
  const TrajectorySample& last = t.final_sample();
  Json fin;
  fin["t"] = last.t;
  fin["norm_h"] = last.norm_h;
  fin["norm_alpha"] = last.norm_alpha;
  fin["norm_kernel"] = last.norm_kernel;
  fin["u"] = last.u;
  if (!last.v.empty()) fin["v"] = last.v;
  j["final"] = fin;
  return j;
}

Json wrap_artifact(const std::string& schema, const Json& config, Json payload) {
  Json j;
  j["tool"] = Json{{"name", "resonance"}, {"version", RESONANCE_VERSION}};
  j["schema"] = schema;
  j["schema_version"] = 1;
  j["config"] = config;
  j["report"] = std::move(payload);
  return j;
}

namespace {
void csv_row(std::ostream& os, const std::vector<double>& vals) {
  char buf[40];
  for (size_t i = 0; i < vals.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", vals[i]);
    os << (i ? "," : "") << buf;
  }
  os << "\n";
}
}  // namespace

void write_trajectory_csv(const Trajectory& t, std::ostream& os) {
  const size_t n = t.samples.empty() ? 0 : t.samples.front().u.size();
  const bool wave = t.model == Model::Wave;
  os << "t";
  for (size_t j = 1; j <= n; ++j) os << ",u_" << j;
  if (wave)
    for (size_t j = 1; j <= n; ++j) os << ",v_" << j;
  os << ",norm_H,norm_alpha,norm_kernel\n";
  std::vector<double> row;
  for (const auto& s : t.samples) {
    row.clear();
    row.push_back(s.t);
    row.insert(row.end(), s.u.begin(), s.u.end());
    if (wave) row.insert(row.end(), s.v.begin(), s.v.end());
    row.push_back(s.norm_h);
    row.push_back(s.norm_alpha);
    row.push_back(s.norm_kernel);
    csv_row(os, row);
  }
}

void write_trajectory_csv_file(const Trajectory& t, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::ios_base::failure("cannot open '" + path + "' for writing");
  write_trajectory_csv(t, os);
}

int report_exit_code(const Json& artifact) {
  const Json* rep = artifact.contains("report") ? &artifact.at("report") : &artifact;
  auto classify = [](const Json& node) -> int {
    if (node.contains("conclusion"))
      return node.at("conclusion").get<std::string>() == "orbit-exists" ? 0 : 2;
    if (node.contains("verdict") && node.at("verdict").is_string()) {
      std::string v = node.at("verdict").get<std::string>();
      if (v == "holds" || v == "pass") return 0;
      if (v == "fails" || v == "fail") return 1;
      return 2;
    }
    return -1;
  };
  int direct = classify(*rep);
  if (direct >= 0) return direct;
  if (rep->contains("verdict") && rep->at("verdict").is_object())
    return classify(rep->at("verdict"));
  // A list of reports: 0 when any holds, else 1 when all decisively fail.
  if (rep->is_array() || rep->contains("reports")) {
    const Json& arr = rep->is_array() ? *rep : rep->at("reports");
    bool any_hold = false, all_fail = !arr.empty();
    for (const auto& item : arr) {
      int c = classify(item);
      if (c == 0) any_hold = true;
      if (c != 1) all_fail = false;
    }
    if (any_hold) return 0;
    return all_fail ? 1 : 2;
  }
  return 3;
}

}  // namespace resonance
