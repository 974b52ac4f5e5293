#include "resonance/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace resonance {

namespace {

// 8-point Gauss-Legendre rule on [-1, 1].
constexpr int kGaussOrder = 8;
constexpr double kGaussNode[kGaussOrder] = {
    -0.9602898564975362, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
    0.1834346424956498,  0.5255324099163290,  0.7966664774136267,  0.9602898564975362};
constexpr double kGaussWeight[kGaussOrder] = {
    0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620,
    0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};

void fill_panels(double length, int panels, std::vector<double>& nodes,
                 std::vector<double>& weights) {
  double h = length / panels;
  for (int p = 0; p < panels; ++p) {
    double a = p * h;
    for (int g = 0; g < kGaussOrder; ++g) {
      nodes.push_back(a + 0.5 * h * (1.0 + kGaussNode[g]));
      weights.push_back(0.5 * h * kGaussWeight[g]);
    }
  }
}

int default_panels(const EigenSystem& sys, bool along_y) {
  int jmax = 1;
  for (const Mode& m : sys.modes) jmax = std::max(jmax, along_y ? m.jy : m.jx);
  return std::max(4 * jmax, 4);
}

}  // namespace

QuadratureGrid build_grid(EigenSystemPtr system, int node_hint) {
  if (!system) throw std::invalid_argument("build_grid: null eigensystem");
  const EigenSystem& sys = *system;
  QuadratureGrid grid;
  grid.system = system;

  if (sys.domain.kind == DomainKind::Interval) {
    int panels = node_hint > 0 ? std::max(1, (node_hint + kGaussOrder - 1) / kGaussOrder)
                               : default_panels(sys, false);
    fill_panels(sys.domain.lx, panels, grid.x, grid.w);
    grid.y.assign(grid.x.size(), 0.0);
  } else {
    int px = default_panels(sys, false);
    int py = default_panels(sys, true);
    if (node_hint > 0) {
      int per_dim = std::max(1, static_cast<int>(std::sqrt(double(node_hint))));
      px = py = std::max(1, (per_dim + kGaussOrder - 1) / kGaussOrder);
    }
    std::vector<double> nx, wx, ny, wy;
    fill_panels(sys.domain.lx, px, nx, wx);
    fill_panels(sys.domain.ly, py, ny, wy);
    for (size_t i = 0; i < nx.size(); ++i)
      for (size_t j = 0; j < ny.size(); ++j) {
        grid.x.push_back(nx[i]);
        grid.y.push_back(ny[j]);
        grid.w.push_back(wx[i] * wy[j]);
      }
  }
  grid.node_count = static_cast<int>(grid.x.size());

  double wsum = 0.0;
  for (double v : grid.w) wsum += v;
  double measure = sys.domain.measure();
  if (std::abs(wsum - measure) > 1e-12 * std::max(1.0, measure))
    throw std::runtime_error("build_grid: quadrature weights do not sum to |Omega|");

  grid.phi.assign(static_cast<size_t>(sys.count), std::vector<double>(grid.x.size()));
  for (int j = 0; j < sys.count; ++j)
    for (int q = 0; q < grid.node_count; ++q)
      grid.phi[static_cast<size_t>(j)][static_cast<size_t>(q)] =
          sys.eigenfunction(j, grid.x[static_cast<size_t>(q)], grid.y[static_cast<size_t>(q)]);

  double defect = 0.0;
  for (int a = 0; a < sys.count; ++a)
    for (int b = a; b < sys.count; ++b) {
      double s = 0.0;
      for (int q = 0; q < grid.node_count; ++q)
        s += grid.w[static_cast<size_t>(q)] * grid.phi[static_cast<size_t>(a)][static_cast<size_t>(q)] *
             grid.phi[static_cast<size_t>(b)][static_cast<size_t>(q)];
      defect = std::max(defect, std::abs(s - (a == b ? 1.0 : 0.0)));
    }
  grid.orthonormality_defect = defect;
  if (defect > 1e-10)
    throw std::runtime_error("build_grid: discrete orthonormality defect " +
                             std::to_string(defect) + " exceeds 1e-10; increase node count");
  return grid;
}

std::vector<double> synthesize(const QuadratureGrid& grid, const ModalField& field) {
  require_compatible(*grid.system, field, "synthesize");
  std::vector<double> vals(static_cast<size_t>(grid.node_count), 0.0);
  for (int j = 0; j < field.size(); ++j) {
    double cj = field.c[static_cast<size_t>(j)];
    if (cj == 0.0) continue;
    const std::vector<double>& row = grid.phi[static_cast<size_t>(j)];
    for (int q = 0; q < grid.node_count; ++q) vals[static_cast<size_t>(q)] += cj * row[static_cast<size_t>(q)];
  }
  return vals;
}

ModalField analyze(const QuadratureGrid& grid, const std::vector<double>& nodal,
                   const std::vector<int>& mode_subset) {
  if (static_cast<int>(nodal.size()) != grid.node_count)
    throw std::invalid_argument("analyze: nodal data does not match grid");
  ModalField out(grid.system->count);
  auto accumulate = [&](int j) {
    const std::vector<double>& row = grid.phi[static_cast<size_t>(j)];
    double s = 0.0;
    for (int q = 0; q < grid.node_count; ++q)
      s += grid.w[static_cast<size_t>(q)] * nodal[static_cast<size_t>(q)] * row[static_cast<size_t>(q)];
    out.c[static_cast<size_t>(j)] = s;
  };
  if (mode_subset.empty())
    for (int j = 0; j < grid.system->count; ++j) accumulate(j);
  else
    for (int j : mode_subset) accumulate(j);
  return out;
}

}  // namespace resonance
