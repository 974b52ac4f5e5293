#pragma once

#include "resonance/nonlinearity.hpp"
#include "resonance/quadrature.hpp"

namespace resonance {

// Raised when an evaluator returns NaN/Inf; carries the offending node.
struct EvaluationError : std::runtime_error {
  int node;
  double x, y, s;
  EvaluationError(const std::string& msg, int node_, double x_, double y_, double s_)
      : std::runtime_error(msg), node(node_), x(x_), y(y_), s(s_) {}
};

// H-orthogonal projection of f(., u(.)) onto span{phi_1..phi_N}:
// F_j = sum_q w_q f(x_q, u(x_q)) Phi[j][q].
ModalField apply_nemytskii(const Nonlinearity& f, const QuadratureGrid& grid,
                           const ModalField& field);

// Nodal values f(x_q, u(x_q)); shared by apply_nemytskii and the samplers.
std::vector<double> nemytskii_values(const Nonlinearity& f, const QuadratureGrid& grid,
                                     const ModalField& field);

struct BoundReport {
  enum class Verdict { Pass, Fail, NoDeclaredBound };
  std::optional<double> declared_m;
  Verdict verdict = Verdict::NoDeclaredBound;
  double observed_max = 0.0;
  double arg_x = 0.0, arg_y = 0.0, arg_s = 0.0;  // where the max is attained
  double s_min = 0.0, s_max = 0.0;
  int s_samples = 0;
  int nodes = 0;
  double lipschitz_quotient_max = 0.0;  // sampled |f(x,s1)-f(x,s2)|/|s1-s2|
  double nu_declared = 0.0;
  double nu_probe_max_dev = 0.0;        // central difference at s=0 vs declared nu
  double origin_max_abs = 0.0;          // max |f(x,0)| over nodes
};

// Samples |f| over nodes x [s_min, s_max] and checks the declared bound.
// Coverage is whatever was sampled; nothing more is claimed.
BoundReport verify_bound(const Nonlinearity& f, const QuadratureGrid& grid, double s_min,
                         double s_max, int samples);

const char* to_string(BoundReport::Verdict v);

}  // namespace resonance
