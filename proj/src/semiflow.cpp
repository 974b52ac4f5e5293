#include "resonance/semiflow.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace resonance {

double phi1(double z) {
  if (!std::isfinite(z)) throw std::invalid_argument("phi1: non-finite argument");
  if (std::abs(z) < 1e-5) return 1.0 + z * (0.5 + z * (1.0 / 6.0 + z / 24.0));
  return std::expm1(z) / z;
}

double phi2(double z) {
  if (!std::isfinite(z)) throw std::invalid_argument("phi2: non-finite argument");
  if (std::abs(z) < 1e-2)
    return 0.5 + z * (1.0 / 6.0 + z * (1.0 / 24.0 + z * (1.0 / 120.0 + z * (1.0 / 720.0 + z / 5040.0))));
  return (std::expm1(z) - z) / (z * z);
}

const char* to_string(Scheme s) { return s == Scheme::ExpEuler ? "expEuler" : "ETDRK2"; }

Scheme parse_scheme(const std::string& name) {
  if (name == "expEuler" || name == "expeuler") return Scheme::ExpEuler;
  if (name == "ETDRK2" || name == "etdrk2") return Scheme::Etdrk2;
  throw std::invalid_argument("unknown scheme '" + name + "'");
}

namespace {

using Matrix6 = Eigen::Matrix<double, 6, 6>;
using Matrix2 = Eigen::Matrix2d;

// Scaling-and-squaring Taylor exponential; plenty for these small blocks.
Matrix6 expm6(const Matrix6& w) {
  double nrm = w.cwiseAbs().rowwise().sum().maxCoeff();
  int s = 0;
  while (nrm > 0.5 && s < 60) {
    nrm *= 0.5;
    ++s;
  }
  Matrix6 x = w / std::ldexp(1.0, s);
  Matrix6 result = Matrix6::Identity();
  Matrix6 term = Matrix6::Identity();
  for (int n = 1; n <= 18; ++n) {
    term = (term * x / double(n)).eval();
    result += term;
  }
  for (int i = 0; i < s; ++i) result = (result * result).eval();
  return result;
}

// e^{Z}, phi1(Z), phi2(Z) for a 2x2 block Z, read off one augmented exponential.
struct BlockWeights {
  Matrix2 e, p1, p2;
};

BlockWeights block_weights(const Matrix2& z) {
  Matrix6 w = Matrix6::Zero();
  w.block<2, 2>(0, 0) = z;
  w.block<2, 2>(0, 2) = Matrix2::Identity();
  w.block<2, 2>(2, 4) = Matrix2::Identity();
  Matrix6 r = expm6(w);
  BlockWeights bw;
  bw.e = r.block<2, 2>(0, 0);
  bw.p1 = r.block<2, 2>(0, 2);
  bw.p2 = r.block<2, 2>(0, 4);
  return bw;
}

struct Diagnostics {
  std::vector<double> alpha_weight;  // mu^alpha per mode
};

TrajectorySample make_sample(double t, const std::vector<double>& u, const std::vector<double>& v,
                             const FlowParams& params, const Diagnostics& diag) {
  TrajectorySample s;
  s.t = t;
  s.u = u;
  s.v = v;
  double h2 = 0.0, a2 = 0.0, k2 = 0.0;
  for (size_t j = 0; j < u.size(); ++j) {
    h2 += u[j] * u[j];
    double au = diag.alpha_weight[j] * u[j];
    a2 += au * au;
  }
  for (int j : params.kernel_modes) k2 += u[static_cast<size_t>(j)] * u[static_cast<size_t>(j)];
  s.norm_h = std::sqrt(h2);
  s.norm_alpha = std::sqrt(a2);
  s.norm_kernel = std::sqrt(k2);
  return s;
}

bool all_finite(const std::vector<double>& v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

void validate_params(const FlowParams& p) {
  if (!(p.dt > 0)) throw std::invalid_argument("flow: dt must be positive");
  if (!(p.t_end >= p.dt)) throw std::invalid_argument("flow: need T >= dt");
  if (p.record_stride < 1) throw std::invalid_argument("flow: record_stride must be >= 1");
}

}  // namespace

Trajectory heat_flow(const Nonlinearity& f, const QuadratureGrid& grid, const ModalField& u0,
                     const FlowParams& params) {
  validate_params(params);
  const EigenSystem& sys = *grid.system;
  require_compatible(sys, u0, "heat_flow");
  const int n = sys.count;
  const int steps = static_cast<int>(std::llround(params.t_end / params.dt));

  std::vector<double> e(static_cast<size_t>(n)), w1(static_cast<size_t>(n)), w2(static_cast<size_t>(n));
  Diagnostics diag;
  diag.alpha_weight.resize(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) {
    double a = params.lambda - sys.modes[static_cast<size_t>(j)].mu;
    double z = a * params.dt;
    e[static_cast<size_t>(j)] = std::exp(z);
    w1[static_cast<size_t>(j)] = params.dt * phi1(z);
    w2[static_cast<size_t>(j)] = params.dt * phi2(z);
    diag.alpha_weight[static_cast<size_t>(j)] = std::pow(sys.modes[static_cast<size_t>(j)].mu, params.alpha);
  }

  Trajectory traj;
  traj.model = Model::Heat;
  traj.params = params;
  ModalField u = u0;
  ModalField prev = u0;
  ModalField stage(n);
  traj.samples.push_back(make_sample(0.0, u.c, {}, params, diag));

  for (int step = 1; step <= steps; ++step) {
    prev = u;
    ModalField f0 = apply_nemytskii(f, grid, u);
    if (params.scheme == Scheme::ExpEuler) {
      for (int j = 0; j < n; ++j) {
        size_t sj = static_cast<size_t>(j);
        u.c[sj] = e[sj] * u.c[sj] + w1[sj] * f0.c[sj];
      }
    } else {
      for (int j = 0; j < n; ++j) {
        size_t sj = static_cast<size_t>(j);
        stage.c[sj] = e[sj] * u.c[sj] + w1[sj] * f0.c[sj];
      }
      ModalField f1 = apply_nemytskii(f, grid, stage);
      for (int j = 0; j < n; ++j) {
        size_t sj = static_cast<size_t>(j);
        u.c[sj] = stage.c[sj] + w2[sj] * (f1.c[sj] - f0.c[sj]);
      }
    }
    if (!all_finite(u.c)) {
      traj.nan_abort = true;
      if (traj.samples.back().t < (step - 1) * params.dt)
        traj.samples.push_back(make_sample((step - 1) * params.dt, prev.c, {}, params, diag));
      break;
    }
    traj.steps_taken = step;
    bool record = step % params.record_stride == 0 || step == steps;
    double hn = h_norm(u);
    if (record || hn > params.guard_radius)
      traj.samples.push_back(make_sample(step * params.dt, u.c, {}, params, diag));
    if (hn > params.guard_radius) {
      traj.blew_up = true;
      break;
    }
  }
  return traj;
}

Trajectory wave_flow(const Nonlinearity& f, const QuadratureGrid& grid, const WaveState& w0,
                     const FlowParams& params) {
  validate_params(params);
  if (params.c < 0) throw std::invalid_argument("wave_flow: damping c must be >= 0");
  const EigenSystem& sys = *grid.system;
  require_compatible(sys, w0.u, "wave_flow");
  require_compatible(sys, w0.v, "wave_flow");
  const int n = sys.count;
  const int steps = static_cast<int>(std::llround(params.t_end / params.dt));

  std::vector<BlockWeights> bw(static_cast<size_t>(n));
  Diagnostics diag;
  diag.alpha_weight.resize(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) {
    double mu = sys.modes[static_cast<size_t>(j)].mu;
    Matrix2 m;
    m << 0.0, 1.0, params.lambda - mu, -params.c * mu;
    bw[static_cast<size_t>(j)] = block_weights(m * params.dt);
    diag.alpha_weight[static_cast<size_t>(j)] = std::pow(mu, params.alpha);
  }

  Trajectory traj;
  traj.model = Model::Wave;
  traj.params = params;
  ModalField u = w0.u, v = w0.v;
  ModalField prev_u = u, prev_v = v;
  ModalField us(n), vs(n);
  traj.samples.push_back(make_sample(0.0, u.c, v.c, params, diag));

  auto advance = [&](const ModalField& uu, const ModalField& vv, const ModalField& force,
                     ModalField& out_u, ModalField& out_v) {
    for (int j = 0; j < n; ++j) {
      size_t sj = static_cast<size_t>(j);
      const BlockWeights& b = bw[sj];
      double fu = params.dt * b.p1(0, 1) * force.c[sj];
      double fv = params.dt * b.p1(1, 1) * force.c[sj];
      out_u.c[sj] = b.e(0, 0) * uu.c[sj] + b.e(0, 1) * vv.c[sj] + fu;
      out_v.c[sj] = b.e(1, 0) * uu.c[sj] + b.e(1, 1) * vv.c[sj] + fv;
    }
  };

  for (int step = 1; step <= steps; ++step) {
    prev_u = u;
    prev_v = v;
    ModalField f0 = apply_nemytskii(f, grid, u);
    if (params.scheme == Scheme::ExpEuler) {
      advance(u, v, f0, us, vs);
      u.c.swap(us.c);
      v.c.swap(vs.c);
    } else {
      advance(u, v, f0, us, vs);
      ModalField f1 = apply_nemytskii(f, grid, us);
      for (int j = 0; j < n; ++j) {
        size_t sj = static_cast<size_t>(j);
        const BlockWeights& b = bw[sj];
        double df = f1.c[sj] - f0.c[sj];
        u.c[sj] = us.c[sj] + params.dt * b.p2(0, 1) * df;
        v.c[sj] = vs.c[sj] + params.dt * b.p2(1, 1) * df;
      }
    }
    if (!all_finite(u.c) || !all_finite(v.c)) {
      traj.nan_abort = true;
      if (traj.samples.back().t < (step - 1) * params.dt)
        traj.samples.push_back(make_sample((step - 1) * params.dt, prev_u.c, prev_v.c, params, diag));
      break;
    }
    traj.steps_taken = step;
    double hn = std::sqrt(h_norm(u) * h_norm(u) + h_norm(v) * h_norm(v));
    bool record = step % params.record_stride == 0 || step == steps;
    if (record || hn > params.guard_radius)
      traj.samples.push_back(make_sample(step * params.dt, u.c, v.c, params, diag));
    if (hn > params.guard_radius) {
      traj.blew_up = true;
      break;
    }
  }
  return traj;
}

}  // namespace resonance
