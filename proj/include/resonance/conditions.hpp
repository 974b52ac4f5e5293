#pragma once

#include <cstdint>

#include "resonance/nemytskii.hpp"
#include "resonance/spectral.hpp"

namespace resonance {

enum class Condition { LL1, LL2, SR1, SR2, G1, G2 };
enum class ConditionVerdict { Holds, Fails, Inconclusive };

const char* to_string(Condition c);
const char* to_string(ConditionVerdict v);
Condition parse_condition(const std::string& name);

struct ConditionWitness {
  std::vector<double> point;  // kernel direction (modal coords) or sample point
  double value = 0.0;         // directed slack / integral observed there
  std::string note;
};

struct ConditionReport {
  Condition condition = Condition::LL1;
  ConditionVerdict verdict = ConditionVerdict::Inconclusive;
  bool sampled = false;        // "holds (sampled)" qualifier
  double margin = 0.0;         // smallest directed slack observed (positive = holds)
  std::vector<ConditionWitness> witnesses;

  // coverage / provenance parameters, embedded verbatim in the JSON report
  std::string f_spec;
  double nu = 0.0;
  int k = 0;
  std::uint64_t seed = 0;
  int samples = 0;
  double b1_radius = 0.0, b2_radius = 0.0;
  std::vector<double> r_schedule;
  double r_found = 0.0;        // first all-clear R (geometric checks)
  std::vector<double> per_r_min_slack;
  std::vector<long long> per_r_violations;
  std::vector<double> rho_multipliers;
  std::vector<std::vector<double>> per_r_rho_min_slack;  // [R][rho multiplier]
  double envelope_slack = 0.0;  // SR part (a)
  double integral_f_inf = 0.0;  // SR part (b)
  double s_probe = 0.0;
  double alpha = 0.0;
};

struct LandesmanLazerResult {
  ConditionReport ll1;
  ConditionReport ll2;
};

// I(u) = int_{u>0} f_+ u + int_{u<0} f_- u over kernel-sphere directions.
// LL1 holds when min I > 0, LL2 when max I < 0; exact directions +-phi when
// dim X0 = 1, seeded sphere samples otherwise.
LandesmanLazerResult check_landesman_lazer(const Nonlinearity& f,
                                           const SpectralDecomposition& decomp,
                                           const QuadratureGrid& grid, int sphere_samples,
                                           std::uint64_t seed);

// Envelope inequality f(x,s)s >= h(x) (lower) or <= h(x) (upper) over nodes x
// sampled s, plus the sign of int f_inf. The envelope side selects SR1/SR2.
ConditionReport check_strong_resonance(const Nonlinearity& f, const QuadratureGrid& grid,
                                       double s_probe, int samples);

struct GeometricParams {
  double b1_radius = 1.0;
  double b2_radius = 1.0;
  std::vector<double> r_schedule = {1, 2, 4, 8, 16, 32, 64, 128, 256};
  int samples_per_r = 200;
  std::uint64_t seed = 0;
  double alpha = 0.9;
};

// Sampled falsifier for the geometric inequalities: directed slack
// s = +-(<F(x+y), x>_H + <F(x+y), z>_H) over kernel vectors x of norm
// rho in {R, 2R, 4R}, y in the alpha-ball of X- (+) X+, z in the H-ball of X0.
// Holds (sampled) at the first schedule R with zero violations; fails when
// every R sees a violation. Refuses unbounded nonlinearities.
ConditionReport check_geometric(const Nonlinearity& f, const SpectralDecomposition& decomp,
                                const QuadratureGrid& grid, Condition which,
                                const GeometricParams& params);

}  // namespace resonance
