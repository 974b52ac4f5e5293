#pragma once

#include <optional>

#include "resonance/types.hpp"

namespace resonance {

// Builds the truncated eigensystem. For rectangles the truncation must not split
// a multiplicity group (throws std::invalid_argument with the nearest valid N).
EigenSystemPtr build_eigensystem(const SpectralDomain& domain, int n_modes);

// Mode count that captures exactly the first n_groups distinct eigenvalues.
int mode_count_for_groups(const SpectralDomain& domain, int n_groups);

// Parses "interval:L" / "rectangle:Lx,Ly" (aliases "rect", literal "pi" accepted).
SpectralDomain parse_domain(const std::string& spec);

// Index partition realizing X = X- (+) X0 (+) X+ at the k-th distinct eigenvalue.
struct SpectralDecomposition {
  EigenSystemPtr system;
  int k = 1;  // 1-based distinct index
  std::vector<int> minus_modes;
  std::vector<int> zero_modes;
  std::vector<int> plus_modes;

  double lambda() const { return system->distinct[static_cast<size_t>(k - 1)].lambda; }
  int dim_minus() const { return static_cast<int>(minus_modes.size()); }  // d_{k-1}
  int dim_zero() const { return static_cast<int>(zero_modes.size()); }
  int d_k() const { return dim_minus() + dim_zero(); }
};

SpectralDecomposition decompose(EigenSystemPtr system, int k);

// Zeroes every coefficient outside the selected index set; idempotent.
ModalField project(const SpectralDecomposition& decomp, const ModalField& field, Part part);

// (sum_j mu_j^{2 alpha} u_j^2)^{1/2}; alpha = 0 degenerates to the H-norm.
double fractional_norm(const EigenSystem& system, const ModalField& field, double alpha);

void require_compatible(const EigenSystem& system, const ModalField& field,
                        const char* where);

}  // namespace resonance
