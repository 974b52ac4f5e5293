#pragma once

#include "resonance/conley.hpp"
#include "resonance/semiflow.hpp"

namespace resonance {

struct Equilibrium {
  ModalField state;
  double residual = 0.0;          // H-norm of (lambda - mu) u + F(u)
  std::vector<double> rates;      // symmetrized Jacobian spectrum, descending
  int unstable_count = 0;
  std::vector<ModalField> unstable_directions;  // H-normalized
  std::string label;
};

struct NewtonOptions {
  double tol = 1e-10;
  int max_iter = 60;
  double merge_factor = 10.0;  // duplicates merged when H-distance < merge_factor * tol
};

std::vector<ModalField> default_seeds(const EigenSystem& system);

// Damped Newton on the modal residual G(u)_j = (lambda - mu_j) u_j + F_j(u);
// forward-difference Jacobian; non-convergent seeds are skipped, duplicates
// merged, results sorted by H-norm (zero first) and labelled.
std::vector<Equilibrium> find_equilibria(const Nonlinearity& f, const QuadratureGrid& grid,
                                         double lambda, const std::vector<ModalField>& seeds,
                                         const NewtonOptions& options = {});

enum class ShotOutcome { ConvergedTo, BoundedNonconvergent, Escaped, DriftLinear };
const char* to_string(ShotOutcome o);

struct Shot {
  int index = 0;
  std::string base_label;
  std::vector<double> direction;  // modal coefficients of the perturbation
  double epsilon = 0.0;
  ShotOutcome outcome = ShotOutcome::BoundedNonconvergent;
  int target = -1;                // equilibrium index for ConvergedTo
  double terminal_distance = 0.0; // to the closest known equilibrium
  double drift_slope = 0.0;
  double drift_r2 = 0.0;
  double t_end = 0.0;
  bool integrator_failed = false;
  std::string detail;
};

struct ShootParams {
  Model model = Model::Heat;
  double lambda = 0.0;
  double c = 1.0;
  double dt = 1e-2;
  double t_end = 40.0;
  double epsilon = 1e-4;
  double tol = 1e-6;             // convergence distance
  double guard_radius = 1e6;
  double drift_r2_threshold = 0.999;
  double drift_slope_min = 1e-6;
  std::vector<int> kernel_modes; // for the drift diagnostic
};

// Integrates +-epsilon along each unstable direction of `base` and classifies
// every shot; converged-to claims are re-validated by a Newton refinement.
std::vector<Shot> shoot_unstable(const Nonlinearity& f, const QuadratureGrid& grid,
                                 const ShootParams& params, const Equilibrium& base,
                                 const std::vector<Equilibrium>& known);

struct DriftReport {
  Model model = Model::Heat;
  int k = 1;
  int force_group = 1;            // distinct group supplying the constant forcing
  double lambda = 0.0;
  double c = 0.0;
  double t_end = 0.0, dt = 0.0;
  bool resonant = true;           // force_group == k
  double max_deviation = 0.0;     // |kernel coefficient - t| (resonant heat)
  double slope = 0.0;             // fitted kernel slope (wave) / expected slope
  double expected_slope = 0.0;
  double fit_r2 = 0.0;
  double saturation_value = 0.0;  // forced coefficient at T (non-resonant)
  double saturation_expected = 0.0;
  double max_kernel_abs = 0.0;    // kernel coefficient magnitude (non-resonant)
};

// Runs the flow with F == phi (first mode of force_group) from u0 = 0 at
// lambda = lambda_k and measures the kernel drift P u(t) = t y0 (resonant)
// or the saturation 1/(mu_force - lambda) with a quiet kernel (non-resonant).
DriftReport drift_demo(EigenSystemPtr system, int k, Model model, double t_end, double dt,
                       double c = 1.0, int force_group = 0);

struct Scenario {
  SpectralDomain domain = SpectralDomain::interval(3.141592653589793);
  int n_modes = 32;
  int node_hint = 0;
  std::string f_spec = "arctan:beta=4";
  int k = 1;
  Model model = Model::Heat;
  double c = 1.0;
  double dt = 1e-2;
  double t_end = 40.0;
  double alpha = 0.9;
  double b1_radius = 1.0;
  double b2_radius = 1.0;
  double r_min = 1.0;
  double r_max = 256.0;
  int ll_samples = 64;
  int g_samples_per_r = 200;
  double sr_s_probe = 1e6;
  int sr_samples = 64;
  std::uint64_t seed = 0;
  double newton_tol = 1e-10;
  int newton_max_iter = 60;
  double epsilon = 1e-4;
  double shoot_tol = 1e-6;
  double guard_radius = 1e6;
};

struct ConnectionReport {
  Scenario scenario;
  std::vector<ConditionReport> chain;
  std::vector<std::string> skipped_checks;  // checks refused with the reason
  ConleyVerdict verdict;
  std::vector<Equilibrium> equilibria;
  std::vector<Shot> shots;
  std::string best_witness;
};

// Orchestrates checkers -> verdict -> equilibria -> shooting; the report
// states the analytic guarantee and the best numerical witness, never a proof.
ConnectionReport search_connections(const Scenario& scenario);

}  // namespace resonance
