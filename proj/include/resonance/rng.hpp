#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace resonance {

// Deterministic sampling: fixed mt19937_64 stream with hand-rolled
// transforms, so identical seeds give identical bytes everywhere.
class DetRng {
 public:
  explicit DetRng(std::uint64_t seed) : eng_(seed) {}

  double uniform01() { return double(eng_() >> 11) * 0x1.0p-53; }

  double normal() {
    double u1 = uniform01();
    double u2 = uniform01();
    return std::sqrt(-2.0 * std::log1p(-u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  // Uniform direction on the unit sphere of dimension dim (l2 coordinates).
  std::vector<double> sphere(int dim) {
    std::vector<double> v(static_cast<size_t>(dim));
    double n2 = 0.0;
    do {
      n2 = 0.0;
      for (auto& x : v) {
        x = normal();
        n2 += x * x;
      }
    } while (n2 == 0.0);
    double inv = 1.0 / std::sqrt(n2);
    for (auto& x : v) x *= inv;
    return v;
  }

  // Uniform point in the ball of given radius (l2 coordinates).
  std::vector<double> ball(int dim, double radius) {
    std::vector<double> v = sphere(dim);
    double r = radius * std::pow(uniform01(), 1.0 / dim);
    for (auto& x : v) x *= r;
    return v;
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace resonance
