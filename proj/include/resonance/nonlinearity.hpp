#pragma once

#include <functional>
#include <optional>

#include "resonance/types.hpp"

namespace resonance {

enum class EnvelopeSide { Lower, Upper };

// Scalar map f(x, s) with declared metadata. The evaluator takes the point
// coordinates (y ignored on intervals) and the state value s.
struct Nonlinearity {
  using ScalarFn = std::function<double(double, double, double)>;   // (x, y, s)
  using SpatialFn = std::function<double(double, double)>;          // (x, y)

  std::string spec;  // canonical description, e.g. "arctan:beta=4"
  ScalarFn f;

  std::optional<double> bound_m;         // declared sup bound on |f|
  double nu = 0.0;                       // D_s f(x, 0)
  bool zero_at_origin = false;           // f(x, 0) = 0 declared
  bool bounded = true;                   // false admits it only to the orbit machinery
  std::optional<SpatialFn> limit_plus;   // lim_{s->+inf} f(x,s)
  std::optional<SpatialFn> limit_minus;  // lim_{s->-inf} f(x,s)
  std::optional<SpatialFn> limit_inf;    // lim_{|s|->inf} f(x,s)*s
  std::optional<SpatialFn> envelope;     // h(x)
  std::optional<EnvelopeSide> envelope_side;

  double eval(double x, double y, double s) const { return f(x, y, s); }
};

// beta * arctan(s): bound |beta| pi/2, limits +-(beta pi/2), nu = beta.
Nonlinearity make_arctan(double beta);

// beta * s / (1 + s^2): limits 0, f_inf = beta, nu = beta, envelope h = 0
// (lower side for beta >= 0, upper otherwise).
Nonlinearity make_saturating(double beta);

// f(x, s) = y0(x) for a single eigenfunction y0 = phi_{mode_index}; nu = 0,
// m = sup|y0|.
Nonlinearity make_constant_kernel(EigenSystemPtr system, int mode_index);

// -s^3; unbounded, admitted only for orbit-search machinery.
Nonlinearity make_cubic();

// a * s; unbounded for a != 0.
Nonlinearity make_linear(double a);

Nonlinearity make_zero();

// "arctan:beta=4" | "saturating:beta=-4" | "constant_kernel:mode=1" |
// "cubic" | "linear:a=2" | "zero"
Nonlinearity parse_nonlinearity(const std::string& spec, EigenSystemPtr system);

}  // namespace resonance
