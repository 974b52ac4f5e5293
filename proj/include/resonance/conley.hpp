#pragma once

#include <optional>

#include "resonance/conditions.hpp"
#include "resonance/spectral.hpp"

namespace resonance {

// Hypothesis failure of the equilibrium index formula: lambda + nu lies in the
// spectrum, so the verdict engine must report no-conclusion.
struct ResonantAtZero : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// d_l = sum of multiplicities of the first l distinct eigenvalues; d_0 = 0.
int cumulative_dims(const EigenSystem& system, int l);

// b_l of the equilibrium 0: 0 when lambda + nu < lambda_1, d_l when
// lambda_l < lambda + nu < lambda_{l+1}. Throws ResonantAtZero when
// lambda + nu hits the spectrum (exact on the integer lattice, 1e-9
// relative tolerance for off-lattice inputs), std::invalid_argument when
// lambda + nu lies beyond the truncated spectrum.
int equilibrium_exponent(const EigenSystem& system, double lambda, double nu);

// Sphere exponent of the maximal invariant set: d_k under G1, d_{k-1} under
// G2; identical for the heat and wave semiflows.
int invariant_set_exponent(const SpectralDecomposition& decomp, Condition which);

enum class MatchedCase { I, II, III, IV, None };
const char* to_string(MatchedCase c);

struct ConleyVerdict {
  Model model = Model::Heat;
  int k = 1;
  double lambda = 0.0;
  double nu = 0.0;
  Condition route = Condition::LL1;   // which condition held
  bool route_sampled = false;
  Condition geometric = Condition::G1;  // implied geometric condition
  int exponent_invariant_set = 0;       // d_k (G1) or d_{k-1} (G2)
  std::optional<int> exponent_zero;     // b_l; absent when resonant at zero
  bool resonant_at_zero = false;
  MatchedCase matched_case = MatchedCase::None;
  bool orbit_exists = false;
  std::vector<std::string> narrative;
};

// Case analysis for a single established condition; fills both exponents,
// matches at most one case, and concludes orbit-exists only when the
// exponents differ.
ConleyVerdict orbit_verdict(const EigenSystem& system, int k, double nu, Condition held,
                            bool held_sampled, Model model);

// Same, but selecting the route from a chain of condition reports.
// Conflicting holds (LL1 with LL2, SR1 with SR2, G1 with G2) are rejected.
ConleyVerdict orbit_verdict_from_chain(const EigenSystem& system, int k, double nu, Model model,
                                       const std::vector<ConditionReport>& chain);

}  // namespace resonance
