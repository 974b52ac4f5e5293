#include "resonance/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "resonance/rng.hpp"

namespace resonance {

const char* to_string(Condition c) {
  switch (c) {
    case Condition::LL1: return "LL1";
    case Condition::LL2: return "LL2";
    case Condition::SR1: return "SR1";
    case Condition::SR2: return "SR2";
    case Condition::G1: return "G1";
    default: return "G2";
  }
}

const char* to_string(ConditionVerdict v) {
  switch (v) {
    case ConditionVerdict::Holds: return "holds";
    case ConditionVerdict::Fails: return "fails";
    default: return "inconclusive";
  }
}

Condition parse_condition(const std::string& name) {
  if (name == "LL1") return Condition::LL1;
  if (name == "LL2") return Condition::LL2;
  if (name == "SR1") return Condition::SR1;
  if (name == "SR2") return Condition::SR2;
  if (name == "G1") return Condition::G1;
  if (name == "G2") return Condition::G2;
  throw std::invalid_argument("unknown condition '" + name + "'");
}

namespace {

void check_same_system(const SpectralDecomposition& decomp, const QuadratureGrid& grid,
                       const char* where) {
  if (decomp.system.get() != grid.system.get())
    throw std::invalid_argument(std::string(where) + ": decomposition and grid disagree on the eigensystem");
}

// Kernel directions to probe: exact +-phi when dim X0 = 1, otherwise the
// signed axes followed by seeded sphere samples.
std::vector<std::vector<double>> kernel_directions(int dim0, int requested, DetRng& rng) {
  std::vector<std::vector<double>> dirs;
  if (dim0 == 1) {
    dirs.push_back({1.0});
    dirs.push_back({-1.0});
    return dirs;
  }
  for (int axis = 0; axis < dim0; ++axis) {
    std::vector<double> d(static_cast<size_t>(dim0), 0.0);
    d[static_cast<size_t>(axis)] = 1.0;
    dirs.push_back(d);
    d[static_cast<size_t>(axis)] = -1.0;
    dirs.push_back(d);
  }
  while (static_cast<int>(dirs.size()) < std::max(requested, 2 * dim0))
    dirs.push_back(rng.sphere(dim0));
  return dirs;
}

}  // namespace

LandesmanLazerResult check_landesman_lazer(const Nonlinearity& f,
                                           const SpectralDecomposition& decomp,
                                           const QuadratureGrid& grid, int sphere_samples,
                                           std::uint64_t seed) {
  check_same_system(decomp, grid, "check_landesman_lazer");
  if (!f.limit_plus || !f.limit_minus)
    throw std::invalid_argument("check_landesman_lazer: nonlinearity does not declare f_+ / f_-");
  if (decomp.dim_zero() < 1)
    throw std::invalid_argument("check_landesman_lazer: empty kernel");
  const int dim0 = decomp.dim_zero();
  DetRng rng(seed);
  auto dirs = kernel_directions(dim0, sphere_samples, rng);

  // Precompute f_+/f_- at nodes.
  const int q_count = grid.node_count;
  std::vector<double> fp(static_cast<size_t>(q_count)), fm(static_cast<size_t>(q_count));
  for (int q = 0; q < q_count; ++q) {
    size_t sq = static_cast<size_t>(q);
    fp[sq] = (*f.limit_plus)(grid.x[sq], grid.y[sq]);
    fm[sq] = (*f.limit_minus)(grid.x[sq], grid.y[sq]);
  }

  double min_i = 0.0, max_i = 0.0;
  std::vector<double> argmin, argmax;
  bool first = true;
  for (const auto& d : dirs) {
    std::vector<double> ubar(static_cast<size_t>(q_count), 0.0);
    for (int a = 0; a < dim0; ++a) {
      int j = decomp.zero_modes[static_cast<size_t>(a)];
      const auto& row = grid.phi[static_cast<size_t>(j)];
      double ca = d[static_cast<size_t>(a)];
      for (int q = 0; q < q_count; ++q) ubar[static_cast<size_t>(q)] += ca * row[static_cast<size_t>(q)];
    }
    double integral = 0.0;
    for (int q = 0; q < q_count; ++q) {
      size_t sq = static_cast<size_t>(q);
      if (ubar[sq] > 0.0)
        integral += grid.w[sq] * fp[sq] * ubar[sq];
      else if (ubar[sq] < 0.0)
        integral += grid.w[sq] * fm[sq] * ubar[sq];
    }
    if (first || integral < min_i) {
      min_i = integral;
      argmin = d;
    }
    if (first || integral > max_i) {
      max_i = integral;
      argmax = d;
    }
    first = false;
  }

  auto base = [&](Condition c, double margin, const std::vector<double>& witness) {
    ConditionReport r;
    r.condition = c;
    r.sampled = dim0 > 1;
    r.margin = margin;
    r.verdict = margin > 0.0 ? ConditionVerdict::Holds : ConditionVerdict::Fails;
    r.witnesses.push_back({witness, margin,
                           margin > 0.0 ? "smallest directed slack" : "violating kernel direction"});
    r.f_spec = f.spec;
    r.nu = f.nu;
    r.k = decomp.k;
    r.seed = seed;
    r.samples = static_cast<int>(dirs.size());
    return r;
  };
  LandesmanLazerResult res;
  res.ll1 = base(Condition::LL1, min_i, argmin);
  res.ll2 = base(Condition::LL2, -max_i, argmax);
  return res;
}

ConditionReport check_strong_resonance(const Nonlinearity& f, const QuadratureGrid& grid,
                                       double s_probe, int samples) {
  if (!f.limit_inf)
    throw std::invalid_argument("check_strong_resonance: f_inf required");
  if (!f.envelope || !f.envelope_side)
    throw std::invalid_argument("check_strong_resonance: envelope h with direction required");
  if (!(s_probe > 0) || samples < 2)
    throw std::invalid_argument("check_strong_resonance: need s_probe > 0 and samples >= 2");

  const bool lower = *f.envelope_side == EnvelopeSide::Lower;
  ConditionReport rep;
  rep.condition = lower ? Condition::SR1 : Condition::SR2;
  rep.sampled = true;
  rep.f_spec = f.spec;
  rep.nu = f.nu;
  rep.samples = samples;
  rep.s_probe = s_probe;

  // (a) envelope inequality over nodes x sampled s: 0 plus both signs of a
  // log grid from 1e-3 up to s_probe.
  std::vector<double> svals = {0.0};
  const double lo = std::log(1e-3), hi = std::log(s_probe);
  for (int i = 0; i < samples; ++i) {
    double mag = std::exp(lo + (hi - lo) * double(i) / std::max(1, samples - 1));
    svals.push_back(mag);
    svals.push_back(-mag);
  }
  double envelope_slack = 0.0;
  bool first = true;
  ConditionWitness env_witness;
  for (double s : svals) {
    for (int q = 0; q < grid.node_count; ++q) {
      size_t sq = static_cast<size_t>(q);
      double lhs = f.eval(grid.x[sq], grid.y[sq], s) * s;
      double h = (*f.envelope)(grid.x[sq], grid.y[sq]);
      double slack = lower ? lhs - h : h - lhs;
      if (first || slack < envelope_slack) {
        envelope_slack = slack;
        env_witness.point = {grid.x[sq], grid.y[sq], s};
        env_witness.value = slack;
        env_witness.note = "envelope slack f(x,s)s vs h(x)";
        first = false;
      }
    }
  }
  rep.envelope_slack = envelope_slack;

  // (b) sign of int f_inf.
  double integral = 0.0;
  for (int q = 0; q < grid.node_count; ++q) {
    size_t sq = static_cast<size_t>(q);
    integral += grid.w[sq] * (*f.limit_inf)(grid.x[sq], grid.y[sq]);
  }
  rep.integral_f_inf = integral;
  double integral_slack = lower ? integral : -integral;

  rep.margin = std::min(envelope_slack, integral_slack);
  bool ok = envelope_slack >= 0.0 && integral_slack > 0.0;
  rep.verdict = ok ? ConditionVerdict::Holds : ConditionVerdict::Fails;
  if (envelope_slack < 0.0) rep.witnesses.push_back(env_witness);
  if (integral_slack <= 0.0)
    rep.witnesses.push_back({{}, integral, "integral of f_inf has the wrong sign"});
  if (ok) rep.witnesses.push_back(env_witness);
  return rep;
}

ConditionReport check_geometric(const Nonlinearity& f, const SpectralDecomposition& decomp,
                                const QuadratureGrid& grid, Condition which,
                                const GeometricParams& params) {
  check_same_system(decomp, grid, "check_geometric");
  if (which != Condition::G1 && which != Condition::G2)
    throw std::invalid_argument("check_geometric: which must be G1 or G2");
  if (!f.bounded)
    throw std::invalid_argument("check_geometric: nonlinearity violates the boundedness assumption");
  if (decomp.dim_zero() < 1) throw std::invalid_argument("check_geometric: empty kernel");
  if (!(params.b1_radius > 0) || !(params.b2_radius > 0))
    throw std::invalid_argument("check_geometric: radii must be positive");
  if (params.r_schedule.empty() || params.samples_per_r < 1)
    throw std::invalid_argument("check_geometric: empty schedule");
  for (size_t i = 1; i < params.r_schedule.size(); ++i)
    if (!(params.r_schedule[i] > params.r_schedule[i - 1]))
      throw std::invalid_argument("check_geometric: R schedule must increase");

  const EigenSystem& sys = *decomp.system;
  const double sign = which == Condition::G1 ? 1.0 : -1.0;
  const int dim0 = decomp.dim_zero();
  std::vector<int> complement = decomp.minus_modes;
  complement.insert(complement.end(), decomp.plus_modes.begin(), decomp.plus_modes.end());
  const int dimc = static_cast<int>(complement.size());

  std::vector<double> alpha_inv(static_cast<size_t>(dimc));
  for (int a = 0; a < dimc; ++a)
    alpha_inv[static_cast<size_t>(a)] =
        std::pow(sys.modes[static_cast<size_t>(complement[static_cast<size_t>(a)])].mu, -params.alpha);

  const std::vector<double> rho_mult = {1.0, 2.0, 4.0};
  DetRng rng(params.seed);

  ConditionReport rep;
  rep.condition = which;
  rep.sampled = true;
  rep.f_spec = f.spec;
  rep.nu = f.nu;
  rep.k = decomp.k;
  rep.seed = params.seed;
  rep.samples = params.samples_per_r;
  rep.b1_radius = params.b1_radius;
  rep.b2_radius = params.b2_radius;
  rep.r_schedule = params.r_schedule;
  rep.rho_multipliers = rho_mult;
  rep.alpha = params.alpha;

  ModalField field(sys.count);
  ConditionWitness worst_overall;
  double first_clear_r = 0.0;
  double decisive_margin = 0.0;

  for (double r : params.r_schedule) {
    long long violations = 0;
    double min_slack = 0.0;
    bool first = true;
    std::vector<double> rho_min(rho_mult.size(), std::numeric_limits<double>::infinity());
    ConditionWitness worst_at_r;
    for (int i = 0; i < params.samples_per_r; ++i) {
      double rho = r * rho_mult[static_cast<size_t>(i % rho_mult.size())];
      // x on the kernel sphere of radius rho
      std::vector<double> xdir;
      if (dim0 == 1)
        xdir = {i % 2 == 0 ? 1.0 : -1.0};
      else
        xdir = rng.sphere(dim0);
      // y in the alpha-ball of the complement, z in the H-ball of the kernel
      std::vector<double> yb = dimc > 0 ? rng.ball(dimc, params.b1_radius) : std::vector<double>{};
      std::vector<double> zb = rng.ball(dim0, params.b2_radius);

      std::fill(field.c.begin(), field.c.end(), 0.0);
      for (int a = 0; a < dim0; ++a)
        field.c[static_cast<size_t>(decomp.zero_modes[static_cast<size_t>(a)])] =
            rho * xdir[static_cast<size_t>(a)];
      for (int a = 0; a < dimc; ++a)
        field.c[static_cast<size_t>(complement[static_cast<size_t>(a)])] =
            yb[static_cast<size_t>(a)] * alpha_inv[static_cast<size_t>(a)];

      std::vector<double> fv = nemytskii_values(f, grid, field);
      ModalField fk = analyze(grid, fv, decomp.zero_modes);
      double inner_x = 0.0, inner_z = 0.0;
      for (int a = 0; a < dim0; ++a) {
        double fj = fk.c[static_cast<size_t>(decomp.zero_modes[static_cast<size_t>(a)])];
        inner_x += fj * rho * xdir[static_cast<size_t>(a)];
        inner_z += fj * zb[static_cast<size_t>(a)];
      }
      double slack = sign * (inner_x + inner_z);
      if (slack <= 0.0) ++violations;
      size_t mi = static_cast<size_t>(i % rho_mult.size());
      rho_min[mi] = std::min(rho_min[mi], slack);
      if (first || slack < min_slack) {
        min_slack = slack;
        worst_at_r.point.assign(dim0, 0.0);
        for (int a = 0; a < dim0; ++a)
          worst_at_r.point[static_cast<size_t>(a)] = rho * xdir[static_cast<size_t>(a)];
        worst_at_r.value = slack;
        worst_at_r.note = "kernel component x with smallest directed slack (rho=" +
                          std::to_string(rho) + ")";
        first = false;
      }
    }
    rep.per_r_violations.push_back(violations);
    rep.per_r_min_slack.push_back(min_slack);
    rep.per_r_rho_min_slack.push_back(rho_min);
    if (violations == 0 && first_clear_r == 0.0) {
      first_clear_r = r;
      decisive_margin = min_slack;
    }
    worst_overall = worst_at_r;  // witness at the largest R scanned
    if (first_clear_r == 0.0) decisive_margin = min_slack;
  }

  if (first_clear_r > 0.0) {
    rep.verdict = ConditionVerdict::Holds;
    rep.r_found = first_clear_r;
    rep.margin = decisive_margin;
    rep.witnesses.push_back(worst_overall);
  } else {
    rep.verdict = ConditionVerdict::Fails;
    rep.margin = decisive_margin;
    rep.witnesses.push_back(worst_overall);
  }
  return rep;
}

}  // namespace resonance
