#include "resonance/conley.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace resonance {

const char* to_string(MatchedCase c) {
  switch (c) {
    case MatchedCase::I: return "i";
    case MatchedCase::II: return "ii";
    case MatchedCase::III: return "iii";
    case MatchedCase::IV: return "iv";
    default: return "none";
  }
}

int cumulative_dims(const EigenSystem& system, int l) {
  if (l < 0 || l > system.distinct_count())
    throw std::invalid_argument("cumulative_dims: l out of range");
  int d = 0;
  for (int i = 0; i < l; ++i) d += system.distinct[static_cast<size_t>(i)].multiplicity();
  return d;
}

namespace {

// Bracket position of s in the distinct spectrum: -1 below lambda_1, l when
// lambda_l < s < lambda_{l+1} (1-based l). Throws on resonance / past the
// truncation.
int bracket_index(const EigenSystem& system, double s) {
  const double tol = 1e-9;
  for (int i = 0; i < system.distinct_count(); ++i) {
    double lam = system.distinct[static_cast<size_t>(i)].lambda;
    if (s == lam || std::abs(s - lam) <= tol * std::max(1.0, std::abs(lam)))
      throw ResonantAtZero("lambda + nu lies in the spectrum (lambda_" + std::to_string(i + 1) +
                           ")");
  }
  if (s < system.distinct.front().lambda) return -1;
  if (s > system.distinct.back().lambda)
    throw std::invalid_argument(
        "equilibrium_exponent: lambda + nu exceeds the truncated spectrum; increase N");
  for (int i = 0; i + 1 < system.distinct_count(); ++i)
    if (system.distinct[static_cast<size_t>(i)].lambda < s &&
        s < system.distinct[static_cast<size_t>(i + 1)].lambda)
      return i + 1;
  throw std::logic_error("bracket_index: unreachable");
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

}  // namespace

int equilibrium_exponent(const EigenSystem& system, double lambda, double nu) {
  int l = bracket_index(system, lambda + nu);
  return l < 0 ? 0 : cumulative_dims(system, l);
}

int invariant_set_exponent(const SpectralDecomposition& decomp, Condition which) {
  if (which == Condition::G1) return decomp.d_k();
  if (which == Condition::G2) return decomp.dim_minus();
  throw std::invalid_argument("invariant_set_exponent: which must be G1 or G2");
}

ConleyVerdict orbit_verdict(const EigenSystem& system, int k, double nu, Condition held,
                            bool held_sampled, Model model) {
  SpectralDecomposition decomp = decompose(
      std::make_shared<const EigenSystem>(system), k);

  ConleyVerdict v;
  v.model = model;
  v.k = k;
  v.lambda = decomp.lambda();
  v.nu = nu;
  v.route = held;
  v.route_sampled = held_sampled;

  const bool positive = held == Condition::LL1 || held == Condition::SR1 || held == Condition::G1;
  v.geometric = positive ? Condition::G1 : Condition::G2;
  v.exponent_invariant_set = invariant_set_exponent(decomp, v.geometric);

  std::string qualifier = held_sampled ? " (sampled)" : "";
  if (held == Condition::G1 || held == Condition::G2) {
    v.narrative.push_back(std::string("geometric condition ") + to_string(held) + qualifier +
                          " taken as established directly");
  } else {
    v.narrative.push_back(std::string("condition ") + to_string(held) + qualifier +
                          " implies geometric condition " + to_string(v.geometric) +
                          " [resonance-condition-implies-geometric]");
  }
  v.narrative.push_back("invariant-set index for the " + std::string(to_string(model)) +
                        " semiflow under " + to_string(v.geometric) + ": Sigma^" +
                        std::to_string(v.exponent_invariant_set) +
                        " [invariant-set-index-formula]");

  double s = v.lambda + nu;
  int l = -2;  // -1 = below lambda_1
  try {
    l = bracket_index(system, s);
  } catch (const ResonantAtZero& e) {
    v.resonant_at_zero = true;
    v.matched_case = MatchedCase::None;
    v.orbit_exists = false;
    v.narrative.push_back(std::string("equilibrium index unavailable: ") + e.what() +
                          " [equilibrium-index-bracket]");
    v.narrative.push_back("conclusion: no-conclusion (equilibrium index hypothesis fails)");
    return v;
  }
  v.exponent_zero = l < 0 ? 0 : cumulative_dims(system, l);
  if (l < 0)
    v.narrative.push_back("equilibrium index: lambda+nu = " + fmt(s) +
                          " < lambda_1, so h({0}) = Sigma^0 [equilibrium-index-bracket]");
  else
    v.narrative.push_back("equilibrium index: lambda+nu = " + fmt(s) + " in (lambda_" +
                          std::to_string(l) + ", lambda_" + std::to_string(l + 1) +
                          "), so h({0}) = Sigma^" + std::to_string(*v.exponent_zero) +
                          " [equilibrium-index-bracket]");

  // Near-resonance advisory: exact bracket matching decided the case, but a
  // user-supplied nu close to the spectrum deserves a flag.
  double nearest = std::numeric_limits<double>::infinity();
  for (const auto& g : system.distinct) nearest = std::min(nearest, std::abs(s - g.lambda));
  if (nearest < 1e-6 * std::max(1.0, std::abs(s)))
    v.narrative.push_back("note: lambda+nu is within 1e-6 of the spectrum; bracket chosen by exact comparison");

  if (positive) {
    if (l < 0)
      v.matched_case = MatchedCase::II;
    else
      v.matched_case = l != k ? MatchedCase::I : MatchedCase::None;
  } else {
    if (l < 0)
      v.matched_case = k != 1 ? MatchedCase::IV : MatchedCase::None;
    else
      v.matched_case = l != k - 1 ? MatchedCase::III : MatchedCase::None;
  }

  if (v.matched_case != MatchedCase::None) {
    v.orbit_exists = *v.exponent_zero != v.exponent_invariant_set;
    if (!v.orbit_exists)
      throw std::logic_error("orbit_verdict: matched case with equal exponents");
    v.narrative.push_back(std::string("case (") + to_string(v.matched_case) +
                          ") matched; Sigma^" + std::to_string(*v.exponent_zero) +
                          " != Sigma^" + std::to_string(v.exponent_invariant_set) +
                          " forces a nonzero compact orbit with lim_{t->-inf} u = 0 or "
                          "lim_{t->+inf} u = 0 [index-mismatch-connection]");
    v.narrative.push_back(std::string("conclusion: orbit-exists") +
                          (held_sampled ? " (route sampled, not certified)" : ""));
  } else {
    v.orbit_exists = false;
    v.narrative.push_back(
        "no case matched (indices tie or side condition fails); conclusion: no-conclusion");
  }
  return v;
}

ConleyVerdict orbit_verdict_from_chain(const EigenSystem& system, int k, double nu, Model model,
                                       const std::vector<ConditionReport>& chain) {
  auto holds = [&](Condition c) -> const ConditionReport* {
    for (const auto& r : chain)
      if (r.condition == c && r.verdict == ConditionVerdict::Holds) return &r;
    return nullptr;
  };
  const ConditionReport* ll1 = holds(Condition::LL1);
  const ConditionReport* ll2 = holds(Condition::LL2);
  const ConditionReport* sr1 = holds(Condition::SR1);
  const ConditionReport* sr2 = holds(Condition::SR2);
  const ConditionReport* g1 = holds(Condition::G1);
  const ConditionReport* g2 = holds(Condition::G2);
  if ((ll1 && ll2) || (sr1 && sr2) || (g1 && g2))
    throw std::invalid_argument("orbit_verdict: inconsistent chain (mutually exclusive conditions both hold)");

  const ConditionReport* route = ll1 ? ll1 : ll2 ? ll2 : sr1 ? sr1 : sr2 ? sr2 : g1 ? g1 : g2;
  if (!route) {
    ConleyVerdict v;
    v.model = model;
    v.k = k;
    SpectralDecomposition decomp = decompose(std::make_shared<const EigenSystem>(system), k);
    v.lambda = decomp.lambda();
    v.nu = nu;
    v.matched_case = MatchedCase::None;
    v.orbit_exists = false;
    v.exponent_invariant_set = invariant_set_exponent(decomp, Condition::G1);
    try {
      v.exponent_zero = equilibrium_exponent(system, v.lambda, nu);
    } catch (const ResonantAtZero&) {
      v.resonant_at_zero = true;
    } catch (const std::invalid_argument&) {
    }
    v.narrative.push_back("no condition established in the chain; conclusion: no-conclusion");
    return v;
  }
  return orbit_verdict(system, k, nu, route->condition, route->sampled, model);
}

}  // namespace resonance
