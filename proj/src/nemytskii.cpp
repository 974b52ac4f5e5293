#include "resonance/nemytskii.hpp"

#include <cmath>
#include <sstream>

namespace resonance {

std::vector<double> nemytskii_values(const Nonlinearity& f, const QuadratureGrid& grid,
                                     const ModalField& field) {
  std::vector<double> u = synthesize(grid, field);
  for (int q = 0; q < grid.node_count; ++q) {
    size_t sq = static_cast<size_t>(q);
    double v = f.eval(grid.x[sq], grid.y[sq], u[sq]);
    if (!std::isfinite(v)) {
      std::ostringstream os;
      os << "nonlinearity evaluated to " << v << " at node " << q << " (x=" << grid.x[sq]
         << ", y=" << grid.y[sq] << ", s=" << u[sq] << ")";
      throw EvaluationError(os.str(), q, grid.x[sq], grid.y[sq], u[sq]);
    }
    u[sq] = v;
  }
  return u;
}

ModalField apply_nemytskii(const Nonlinearity& f, const QuadratureGrid& grid,
                           const ModalField& field) {
  return analyze(grid, nemytskii_values(f, grid, field));
}

BoundReport verify_bound(const Nonlinearity& f, const QuadratureGrid& grid, double s_min,
                         double s_max, int samples) {
  if (samples < 1) throw std::invalid_argument("verify_bound: samples must be >= 1");
  if (!(s_min <= s_max) || !std::isfinite(s_min) || !std::isfinite(s_max))
    throw std::invalid_argument("verify_bound: bad s range");
  BoundReport rep;
  rep.declared_m = f.bound_m;
  rep.s_min = s_min;
  rep.s_max = s_max;
  rep.s_samples = samples;
  rep.nodes = grid.node_count;
  rep.nu_declared = f.nu;

  double ds = samples > 1 ? (s_max - s_min) / (samples - 1) : 0.0;
  double prev_s = 0.0;
  std::vector<double> prev_vals(static_cast<size_t>(grid.node_count), 0.0);
  for (int i = 0; i < samples; ++i) {
    double s = s_min + i * ds;
    for (int q = 0; q < grid.node_count; ++q) {
      size_t sq = static_cast<size_t>(q);
      double v = f.eval(grid.x[sq], grid.y[sq], s);
      if (!std::isfinite(v))
        throw EvaluationError("verify_bound: evaluator not finite", q, grid.x[sq], grid.y[sq], s);
      if (std::abs(v) > rep.observed_max) {
        rep.observed_max = std::abs(v);
        rep.arg_x = grid.x[sq];
        rep.arg_y = grid.y[sq];
        rep.arg_s = s;
      }
      if (i > 0 && ds > 0) {
        double q_lip = std::abs(v - prev_vals[sq]) / (s - prev_s);
        rep.lipschitz_quotient_max = std::max(rep.lipschitz_quotient_max, q_lip);
      }
      prev_vals[sq] = v;
    }
    prev_s = s;
  }

  // Spot probes at the origin: f(x,0) and the difference quotient against nu.
  const double delta = 1e-6;
  for (int q = 0; q < grid.node_count; ++q) {
    size_t sq = static_cast<size_t>(q);
    double f0 = f.eval(grid.x[sq], grid.y[sq], 0.0);
    rep.origin_max_abs = std::max(rep.origin_max_abs, std::abs(f0));
    double fd = (f.eval(grid.x[sq], grid.y[sq], delta) - f.eval(grid.x[sq], grid.y[sq], -delta)) /
                (2.0 * delta);
    rep.nu_probe_max_dev = std::max(rep.nu_probe_max_dev, std::abs(fd - f.nu));
  }

  if (!rep.declared_m) {
    rep.verdict = BoundReport::Verdict::NoDeclaredBound;
  } else {
    rep.verdict = rep.observed_max <= *rep.declared_m ? BoundReport::Verdict::Pass
                                                      : BoundReport::Verdict::Fail;
  }
  return rep;
}

const char* to_string(BoundReport::Verdict v) {
  switch (v) {
    case BoundReport::Verdict::Pass: return "pass";
    case BoundReport::Verdict::Fail: return "fail";
    default: return "no-declared-bound";
  }
}

}  // namespace resonance
