#pragma once

#include "resonance/spectral.hpp"

namespace resonance {

// Composite Gauss-Legendre grid with the eigenfunction table Phi[j][q].
// Construction verifies sum(w) = |Omega| (1e-12) and discrete orthonormality
// of the modes (defect <= 1e-10) and throws std::runtime_error otherwise.
struct QuadratureGrid {
  EigenSystemPtr system;
  std::vector<double> x, y, w;             // y is all-zero for interval domains
  std::vector<std::vector<double>> phi;    // [mode][node]
  int node_count = 0;
  double orthonormality_defect = 0.0;
};

// node_hint ~ requested total node count; 0 picks the default
// (4 * max mode index panels of 8-point Gauss-Legendre per dimension).
QuadratureGrid build_grid(EigenSystemPtr system, int node_hint = 0);

// values[q] = sum_j c_j Phi[j][q]
std::vector<double> synthesize(const QuadratureGrid& grid, const ModalField& field);

// Modal coefficients of nodal data: out_j = sum_q w_q values[q] Phi[j][q],
// restricted to the given mode set (all modes when empty).
ModalField analyze(const QuadratureGrid& grid, const std::vector<double>& nodal,
                   const std::vector<int>& mode_subset = {});

}  // namespace resonance
