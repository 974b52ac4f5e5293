#pragma once

#include "resonance/nemytskii.hpp"
#include "resonance/spectral.hpp"

namespace resonance {

// (e^z - 1)/z with a Taylor branch near 0; relative error <= 1e-14.
double phi1(double z);
// (e^z - 1 - z)/z^2 with a Taylor branch near 0.
double phi2(double z);

enum class Scheme { ExpEuler, Etdrk2 };

struct FlowParams {
  double lambda = 0.0;
  double c = 1.0;               // wave damping factor
  double dt = 1e-2;
  double t_end = 1.0;
  Scheme scheme = Scheme::ExpEuler;
  double guard_radius = 1e6;    // H-norm blow-up guard
  int record_stride = 1;
  double alpha = 0.9;           // diagnostic fractional norm
  std::vector<int> kernel_modes;  // diagnostic kernel projection (may be empty)
};

struct TrajectorySample {
  double t = 0.0;
  std::vector<double> u;
  std::vector<double> v;  // empty for the heat flow
  double norm_h = 0.0;
  double norm_alpha = 0.0;
  double norm_kernel = 0.0;
};

struct Trajectory {
  Model model = Model::Heat;
  FlowParams params;
  std::vector<TrajectorySample> samples;
  int steps_taken = 0;
  bool blew_up = false;
  bool nan_abort = false;

  const TrajectorySample& final_sample() const { return samples.back(); }
};

// Heat semiflow: per-mode rate a_j = lambda - mu_j, exponential integrator;
// the one-step map with frozen F is the exact mild solution.
Trajectory heat_flow(const Nonlinearity& f, const QuadratureGrid& grid, const ModalField& u0,
                     const FlowParams& params);

// Strongly damped wave semiflow via the per-mode 2x2 block
// M_j = [[0, 1], [lambda - mu_j, -c mu_j]]; exact block exponential plus
// phi1-weighted forcing on the velocity row.
Trajectory wave_flow(const Nonlinearity& f, const QuadratureGrid& grid, const WaveState& w0,
                     const FlowParams& params);

const char* to_string(Scheme s);
Scheme parse_scheme(const std::string& name);

}  // namespace resonance
