#pragma once

#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace resonance {

enum class DomainKind { Interval, Rectangle };

// Reference domain with closed-form Dirichlet-Laplacian eigenpairs.
struct SpectralDomain {
  DomainKind kind = DomainKind::Interval;
  double lx = 1.0;  // interval length, or x-extent
  double ly = 0.0;  // y-extent (rectangle only)

  static SpectralDomain interval(double length);
  static SpectralDomain rectangle(double length_x, double length_y);

  int dimension() const { return kind == DomainKind::Interval ? 1 : 2; }
  double measure() const { return kind == DomainKind::Interval ? lx : lx * ly; }
  bool operator==(const SpectralDomain& o) const {
    return kind == o.kind && lx == o.lx && ly == o.ly;
  }
};

// One sine mode. jy == 0 marks an interval mode.
struct Mode {
  double mu = 0.0;     // eigenvalue of A = -Laplacian
  int jx = 0;
  int jy = 0;
  long long key = 0;   // exact integer grouping key; mu == key * base when commensurate
};

struct DistinctGroup {
  double lambda = 0.0;
  long long key = 0;
  std::vector<int> modes;  // 0-based indices into EigenSystem::modes
  int multiplicity() const { return static_cast<int>(modes.size()); }
};

// Truncated eigensystem. Immutable after construction; share via EigenSystemPtr.
struct EigenSystem {
  SpectralDomain domain;
  int count = 0;  // N
  std::vector<Mode> modes;            // ascending eigenvalue, lexicographic within ties
  std::vector<DistinctGroup> distinct;
  double base = 1.0;   // eigenvalue unit: mu = key * base (commensurate case)
  bool commensurate = true;
  std::vector<int> group_of_mode;     // mode index -> 0-based distinct index

  int distinct_count() const { return static_cast<int>(distinct.size()); }
  double eigenfunction(int mode_index, double x, double y = 0.0) const;
};

using EigenSystemPtr = std::shared_ptr<const EigenSystem>;

// Coefficient vector over span{phi_1..phi_N}. The H-norm is the l2-norm of c.
struct ModalField {
  std::vector<double> c;

  ModalField() = default;
  explicit ModalField(int n) : c(static_cast<size_t>(n), 0.0) {}

  int size() const { return static_cast<int>(c.size()); }
  static ModalField zeros(int n) { return ModalField(n); }
  static ModalField unit(int n, int mode_index) {
    ModalField f(n);
    f.c.at(static_cast<size_t>(mode_index)) = 1.0;
    return f;
  }
};

inline double h_inner(const ModalField& a, const ModalField& b) {
  if (a.size() != b.size()) throw std::invalid_argument("h_inner: size mismatch");
  double s = 0.0;
  for (size_t j = 0; j < a.c.size(); ++j) s += a.c[j] * b.c[j];
  return s;
}

inline double h_norm(const ModalField& a) {
  double s = 0.0;
  for (double v : a.c) s += v * v;
  return std::sqrt(s);
}

// State for the second-order flow: position u (X^alpha role) and velocity v (X role).
struct WaveState {
  ModalField u;
  ModalField v;
};

enum class Part { Minus, Zero, Plus };
enum class Model { Heat, Wave };

inline const char* to_string(Model m) { return m == Model::Heat ? "heat" : "wave"; }
inline const char* to_string(Part p) {
  switch (p) {
    case Part::Minus: return "minus";
    case Part::Zero: return "zero";
    default: return "plus";
  }
}

}  // namespace resonance
