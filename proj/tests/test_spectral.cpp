#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "resonance/spectral.hpp"

using namespace resonance;

namespace {
constexpr double kPi = std::numbers::pi;

ModalField random_field(int n, unsigned seed) {
  std::mt19937 eng(seed);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  ModalField f(n);
  for (auto& c : f.c) c = dist(eng);
  return f;
}
}  // namespace

TEST_SUITE_BEGIN("spectral");

TEST_CASE("interval(pi) eigenvalues are the squares, multiplicity 1") {
  auto sys = build_eigensystem(SpectralDomain::interval(kPi), 4);
  REQUIRE(sys->distinct_count() == 4);
  for (int i = 0; i < 4; ++i) {
    long long k = i + 1;
    CHECK(sys->distinct[i].key == k * k);
    CHECK(sys->distinct[i].lambda == double(k * k));  // base (pi/pi)^2 is exactly 1
    CHECK(sys->distinct[i].multiplicity() == 1);
  }
}

TEST_CASE("interval(1) lambda_1 = pi^2") {
  auto sys = build_eigensystem(SpectralDomain::interval(1.0), 1);
  CHECK(sys->distinct[0].lambda == doctest::Approx(kPi * kPi).epsilon(1e-14));
}

TEST_CASE("rectangle(pi,pi): first groups are 2, 5, 8 with multiplicities 1, 2, 1") {
  int n = mode_count_for_groups(SpectralDomain::rectangle(kPi, kPi), 3);
  CHECK(n == 4);
  auto sys = build_eigensystem(SpectralDomain::rectangle(kPi, kPi), n);
  REQUIRE(sys->distinct_count() == 3);
  CHECK(sys->distinct[0].lambda == 2.0);
  CHECK(sys->distinct[1].lambda == 5.0);
  CHECK(sys->distinct[2].lambda == 8.0);
  CHECK(sys->distinct[0].multiplicity() == 1);
  CHECK(sys->distinct[1].multiplicity() == 2);
  CHECK(sys->distinct[2].multiplicity() == 1);
  // lexicographic ordering inside the lambda = 5 group
  const auto& g = sys->distinct[1];
  CHECK(sys->modes[g.modes[0]].jx == 1);
  CHECK(sys->modes[g.modes[0]].jy == 2);
  CHECK(sys->modes[g.modes[1]].jx == 2);
  CHECK(sys->modes[g.modes[1]].jy == 1);
}

TEST_CASE("truncation splitting a group is rejected") {
  CHECK_THROWS_AS(build_eigensystem(SpectralDomain::rectangle(kPi, kPi), 2),
                  std::invalid_argument);
  // N=3 closes the lambda=5 pair exactly, N=4 adds the singleton lambda=8
  auto three = build_eigensystem(SpectralDomain::rectangle(kPi, kPi), 3);
  CHECK(three->distinct_count() == 2);
  CHECK_NOTHROW(build_eigensystem(SpectralDomain::rectangle(kPi, kPi), 4));
  // the lambda = 50 group {(1,7),(5,5),(7,1)} has multiplicity 3 after 30 lower
  // modes: N = 31, 32 split it, N = 30 and 33 are boundaries
  CHECK_THROWS_AS(build_eigensystem(SpectralDomain::rectangle(kPi, kPi), 31),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_eigensystem(SpectralDomain::rectangle(kPi, kPi), 32),
                  std::invalid_argument);
  CHECK_NOTHROW(build_eigensystem(SpectralDomain::rectangle(kPi, kPi), 30));
  auto t33 = build_eigensystem(SpectralDomain::rectangle(kPi, kPi), 33);
  CHECK(t33->distinct.back().lambda == 50.0);
  CHECK(t33->distinct.back().multiplicity() == 3);
}

TEST_CASE("commensurate rectangle (2:1) groups exactly on the scaled lattice") {
  auto sys = build_eigensystem(SpectralDomain::rectangle(2.0, 1.0), 4);
  CHECK(sys->commensurate);
  for (int i = 1; i < sys->distinct_count(); ++i)
    CHECK(sys->distinct[i].lambda > sys->distinct[i - 1].lambda);
}

TEST_CASE("incommensurate rectangle falls back to singleton groups") {
  auto sys =
      build_eigensystem(SpectralDomain::rectangle(1.0, std::sqrt(7.0) / std::exp(1.0)), 6);
  CHECK_FALSE(sys->commensurate);
  for (const auto& g : sys->distinct) CHECK(g.multiplicity() == 1);
}

TEST_CASE("invalid domains are rejected") {
  CHECK_THROWS_AS(SpectralDomain::interval(0.0), std::invalid_argument);
  CHECK_THROWS_AS(SpectralDomain::interval(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(SpectralDomain::rectangle(1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(build_eigensystem(SpectralDomain::interval(1.0), 0), std::invalid_argument);
}

TEST_CASE("parse_domain accepts pi literals") {
  SpectralDomain d = parse_domain("interval:pi");
  CHECK(d.lx == kPi);
  SpectralDomain r = parse_domain("rect:pi,2.5");
  CHECK(r.kind == DomainKind::Rectangle);
  CHECK(r.ly == 2.5);
  CHECK_THROWS_AS(parse_domain("disc:1"), std::invalid_argument);
}

TEST_CASE("decompose: k=1 has empty minus part") {
  auto sys = build_eigensystem(SpectralDomain::interval(kPi), 4);
  auto d = decompose(sys, 1);
  CHECK(d.minus_modes.empty());
  CHECK(d.zero_modes == std::vector<int>{0});
  CHECK(d.dim_minus() == 0);
  CHECK(d.d_k() == 1);
}

TEST_CASE("decompose: k=3 on the interval") {
  auto sys = build_eigensystem(SpectralDomain::interval(kPi), 4);
  auto d = decompose(sys, 3);
  CHECK(d.minus_modes == std::vector<int>{0, 1});
  CHECK(d.zero_modes == std::vector<int>{2});
  CHECK(d.plus_modes == std::vector<int>{3});
  CHECK(d.dim_minus() == 2);
  CHECK(d.d_k() == 3);
}

TEST_CASE("decompose: rectangle k=2 kernel has dimension 2") {
  auto sys = build_eigensystem(SpectralDomain::rectangle(kPi, kPi), 4);
  auto d = decompose(sys, 2);
  CHECK(d.dim_minus() == 1);
  CHECK(d.dim_zero() == 2);
  CHECK(d.d_k() == 3);
  CHECK_THROWS_AS(decompose(sys, 4), std::invalid_argument);
  CHECK_THROWS_AS(decompose(sys, 0), std::invalid_argument);
}

TEST_CASE("projections: identity on the kernel, zero across, exact completeness") {
  auto sys = build_eigensystem(SpectralDomain::interval(kPi), 4);
  auto d = decompose(sys, 1);
  ModalField e1 = ModalField::unit(4, 0);
  ModalField e2 = ModalField::unit(4, 1);
  CHECK(project(d, e1, Part::Zero).c == e1.c);
  CHECK(project(d, e2, Part::Zero).c == ModalField::zeros(4).c);

  for (int k = 1; k <= 4; ++k) {
    auto dk = decompose(sys, k);
    for (unsigned seed = 0; seed < 8; ++seed) {
      ModalField f = random_field(4, seed);
      ModalField pm = project(dk, f, Part::Minus);
      ModalField pz = project(dk, f, Part::Zero);
      ModalField pp = project(dk, f, Part::Plus);
      for (int j = 0; j < 4; ++j)
        CHECK(pm.c[j] + pz.c[j] + pp.c[j] == f.c[j]);  // exact, disjoint support
      CHECK(h_inner(pm, pz) == 0.0);
      CHECK(h_inner(pm, pp) == 0.0);
      CHECK(h_inner(pz, pp) == 0.0);
      CHECK(project(dk, pz, Part::Zero).c == pz.c);  // idempotent
    }
  }
}

TEST_CASE("project rejects mismatched fields") {
  auto sys = build_eigensystem(SpectralDomain::interval(kPi), 4);
  auto d = decompose(sys, 1);
  CHECK_THROWS_AS(project(d, ModalField::zeros(5), Part::Zero), std::invalid_argument);
}

TEST_CASE("fractional norm examples") {
  auto sys = build_eigensystem(SpectralDomain::interval(kPi), 4);
  ModalField e2 = ModalField::unit(4, 1);  // mu = 4
  CHECK(fractional_norm(*sys, e2, 0.5) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(fractional_norm(*sys, ModalField::zeros(4), 0.7) == 0.0);

  ModalField two(4);
  two.c[0] = 1.0;  // mu = 1
  two.c[2] = 1.0;  // mu = 9
  CHECK(fractional_norm(*sys, two, 0.5) == doctest::Approx(std::sqrt(10.0)).epsilon(1e-14));
  CHECK(fractional_norm(*sys, two, 0.0) == doctest::Approx(h_norm(two)).epsilon(1e-14));
  CHECK_THROWS_AS(fractional_norm(*sys, two, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(fractional_norm(*sys, two, 1.5), std::invalid_argument);
}

TEST_CASE("fractional norm is nondecreasing in alpha when mu >= 1") {
  auto sys = build_eigensystem(SpectralDomain::interval(kPi), 6);
  for (unsigned seed = 0; seed < 16; ++seed) {
    ModalField f = random_field(6, 100 + seed);
    double prev = fractional_norm(*sys, f, 0.0);
    for (double a : {0.1, 0.3, 0.5, 0.7, 0.9, 1.0}) {
      double cur = fractional_norm(*sys, f, a);
      CHECK(cur >= prev - 1e-12);
      prev = cur;
    }
  }
}

TEST_CASE("distinct groups carry exactly equal eigenvalues") {
  auto sys = build_eigensystem(SpectralDomain::rectangle(kPi, kPi), 10);
  for (const auto& g : sys->distinct)
    for (int m : g.modes) {
      CHECK(sys->modes[m].key == g.key);
      CHECK(sys->modes[m].mu == g.lambda);  // same key * base product
    }
}

TEST_SUITE_END();
