#include "resonance/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace resonance {

namespace {

constexpr double kPi = std::numbers::pi;

// Best rational p/q for t with q <= max_den, via continued fractions.
// Returns nothing if no convergent matches to 1e-12 relative.
std::optional<std::pair<long long, long long>> small_rational(double t, long long max_den) {
  if (!(t > 0) || !std::isfinite(t)) return std::nullopt;
  long long p0 = 1, q0 = 0, p1 = 0, q1 = 1;  // convergents p0/q0 (current), p1/q1 (previous)
  double x = t;
  for (int iter = 0; iter < 64; ++iter) {
    double fl = std::floor(x);
    if (fl > 1e15) break;
    long long a = static_cast<long long>(fl);
    long long p2 = a * p0 + p1;
    long long q2 = a * q0 + q1;
    if (q2 > max_den) break;
    p1 = p0; q1 = q0; p0 = p2; q0 = q2;
    if (q0 > 0 && std::abs(t - double(p0) / double(q0)) <= 1e-12 * std::max(1.0, t))
      return std::make_pair(p0, q0);
    double frac = x - fl;
    if (frac < 1e-15) break;
    x = 1.0 / frac;
  }
  return std::nullopt;
}

}  // namespace

SpectralDomain SpectralDomain::interval(double length) {
  if (!(length > 0) || !std::isfinite(length))
    throw std::invalid_argument("SpectralDomain: interval length must be positive");
  SpectralDomain d;
  d.kind = DomainKind::Interval;
  d.lx = length;
  d.ly = 0.0;
  return d;
}

SpectralDomain SpectralDomain::rectangle(double length_x, double length_y) {
  if (!(length_x > 0) || !(length_y > 0) || !std::isfinite(length_x) || !std::isfinite(length_y))
    throw std::invalid_argument("SpectralDomain: rectangle lengths must be positive");
  SpectralDomain d;
  d.kind = DomainKind::Rectangle;
  d.lx = length_x;
  d.ly = length_y;
  return d;
}

double EigenSystem::eigenfunction(int mode_index, double x, double y) const {
  const Mode& m = modes.at(static_cast<size_t>(mode_index));
  if (domain.kind == DomainKind::Interval) {
    return std::sqrt(2.0 / domain.lx) * std::sin(m.jx * kPi * x / domain.lx);
  }
  return 2.0 / std::sqrt(domain.lx * domain.ly) * std::sin(m.jx * kPi * x / domain.lx) *
         std::sin(m.jy * kPi * y / domain.ly);
}

namespace {

EigenSystem build_interval(const SpectralDomain& domain, int n) {
  EigenSystem sys;
  sys.domain = domain;
  sys.count = n;
  sys.base = (kPi / domain.lx) * (kPi / domain.lx);
  sys.commensurate = true;
  for (int j = 1; j <= n; ++j) {
    Mode m;
    m.jx = j;
    m.jy = 0;
    m.key = static_cast<long long>(j) * j;
    m.mu = double(m.key) * sys.base;
    sys.modes.push_back(m);
    DistinctGroup g;
    g.lambda = m.mu;
    g.key = m.key;
    g.modes = {j - 1};
    sys.distinct.push_back(g);
    sys.group_of_mode.push_back(j - 1);
  }
  return sys;
}

struct RectMode {
  int jx, jy;
  long long key;   // j^2 q + k^2 p when (Lx/Ly)^2 = p/q; else unused
  double mu;
};

EigenSystem build_rectangle(const SpectralDomain& domain, int n) {
  const double bx = (kPi / domain.lx) * (kPi / domain.lx);
  const double by = (kPi / domain.ly) * (kPi / domain.ly);
  auto ratio = domain.lx == domain.ly
                   ? std::optional<std::pair<long long, long long>>({1, 1})
                   : small_rational((domain.lx / domain.ly) * (domain.lx / domain.ly), 64);

  // Enumerate all modes with mu <= cap, growing cap until we can see past index n.
  std::vector<RectMode> pool;
  double cap = bx + by;
  for (int round = 0; round < 64; ++round) {
    pool.clear();
    int jmax = static_cast<int>(std::floor(std::sqrt(cap / bx))) + 1;
    for (int j = 1; j <= jmax; ++j) {
      double rest = cap - bx * double(j) * double(j);
      if (rest < by) continue;
      int kmax = static_cast<int>(std::floor(std::sqrt(rest / by))) + 1;
      for (int k = 1; k <= kmax; ++k) {
        RectMode m;
        m.jx = j;
        m.jy = k;
        m.mu = bx * double(j) * double(j) + by * double(k) * double(k);
        if (m.mu > cap) continue;
        m.key = ratio ? static_cast<long long>(j) * j * ratio->second +
                            static_cast<long long>(k) * k * ratio->first
                      : 0;
        pool.push_back(m);
      }
    }
    if (static_cast<int>(pool.size()) > n) break;
    cap *= 2.0;
  }
  if (static_cast<int>(pool.size()) <= n)
    throw std::invalid_argument("build_eigensystem: mode enumeration failed to reach N+1 modes");

  if (ratio) {
    std::sort(pool.begin(), pool.end(), [](const RectMode& a, const RectMode& b) {
      if (a.key != b.key) return a.key < b.key;
      if (a.jx != b.jx) return a.jx < b.jx;
      return a.jy < b.jy;
    });
    if (pool[static_cast<size_t>(n - 1)].key == pool[static_cast<size_t>(n)].key) {
      // Locate the surrounding group boundaries to suggest valid truncations.
      long long split_key = pool[static_cast<size_t>(n - 1)].key;
      int lo = n, hi = n;
      while (lo > 0 && pool[static_cast<size_t>(lo - 1)].key == split_key) --lo;
      while (hi < static_cast<int>(pool.size()) && pool[static_cast<size_t>(hi)].key == split_key) ++hi;
      std::ostringstream os;
      os << "build_eigensystem: N=" << n << " splits a multiplicity group; "
         << "nearest valid truncations are N=" << lo << " and N=" << hi;
      throw std::invalid_argument(os.str());
    }
  } else {
    std::sort(pool.begin(), pool.end(), [](const RectMode& a, const RectMode& b) {
      if (a.mu != b.mu) return a.mu < b.mu;
      if (a.jx != b.jx) return a.jx < b.jx;
      return a.jy < b.jy;
    });
  }

  EigenSystem sys;
  sys.domain = domain;
  sys.count = n;
  sys.commensurate = ratio.has_value();
  sys.base = ratio ? bx / double(ratio->second) : 0.0;
  sys.group_of_mode.resize(static_cast<size_t>(n), -1);
  for (int i = 0; i < n; ++i) {
    const RectMode& rm = pool[static_cast<size_t>(i)];
    Mode m;
    m.jx = rm.jx;
    m.jy = rm.jy;
    m.key = rm.key;
    m.mu = ratio ? double(rm.key) * sys.base : rm.mu;
    bool same_group = !sys.modes.empty() && ratio && sys.modes.back().key == rm.key;
    sys.modes.push_back(m);
    if (same_group) {
      sys.distinct.back().modes.push_back(i);
    } else {
      DistinctGroup g;
      g.lambda = m.mu;
      g.key = m.key;
      g.modes = {i};
      sys.distinct.push_back(g);
    }
    sys.group_of_mode[static_cast<size_t>(i)] = static_cast<int>(sys.distinct.size()) - 1;
  }
  return sys;
}

void check_invariants(const EigenSystem& sys) {
  for (const Mode& m : sys.modes)
    if (!(m.mu > 0)) throw std::logic_error("EigenSystem: nonpositive eigenvalue");
  int total = 0;
  for (size_t i = 0; i < sys.distinct.size(); ++i) {
    total += sys.distinct[i].multiplicity();
    if (sys.distinct[i].multiplicity() < 1)
      throw std::logic_error("EigenSystem: empty distinct group");
    if (i > 0 && !(sys.distinct[i - 1].lambda < sys.distinct[i].lambda))
      throw std::logic_error("EigenSystem: distinct eigenvalues not strictly increasing");
  }
  if (total != sys.count) throw std::logic_error("EigenSystem: multiplicities do not sum to N");
}

}  // namespace

EigenSystemPtr build_eigensystem(const SpectralDomain& domain, int n_modes) {
  if (n_modes < 1) throw std::invalid_argument("build_eigensystem: N must be >= 1");
  EigenSystem sys = domain.kind == DomainKind::Interval ? build_interval(domain, n_modes)
                                                        : build_rectangle(domain, n_modes);
  check_invariants(sys);
  return std::make_shared<const EigenSystem>(std::move(sys));
}

int mode_count_for_groups(const SpectralDomain& domain, int n_groups) {
  if (n_groups < 1) throw std::invalid_argument("mode_count_for_groups: need n_groups >= 1");
  if (domain.kind == DomainKind::Interval) return n_groups;
  // Grow the truncation until it holds at least n_groups full groups.
  for (int n = n_groups;; ++n) {
    EigenSystemPtr sys;
    try {
      sys = build_eigensystem(domain, n);
    } catch (const std::invalid_argument&) {
      continue;  // split truncation, try the next N
    }
    if (sys->distinct_count() >= n_groups) {
      int count = 0;
      for (int g = 0; g < n_groups; ++g) count += sys->distinct[static_cast<size_t>(g)].multiplicity();
      return count;
    }
    if (n > 1 << 20) throw std::runtime_error("mode_count_for_groups: runaway enumeration");
  }
}

SpectralDomain parse_domain(const std::string& spec) {
  auto parse_len = [](std::string tok) {
    for (char& ch : tok) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    if (tok == "pi") return kPi;
    size_t pos = 0;
    double v = std::stod(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument("parse_domain: bad length '" + tok + "'");
    return v;
  };
  auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("parse_domain: expected 'interval:L' or 'rectangle:Lx,Ly'");
  std::string kind = spec.substr(0, colon);
  std::string rest = spec.substr(colon + 1);
  if (kind == "interval") return SpectralDomain::interval(parse_len(rest));
  if (kind == "rectangle" || kind == "rect") {
    auto comma = rest.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("parse_domain: rectangle needs two lengths 'Lx,Ly'");
    return SpectralDomain::rectangle(parse_len(rest.substr(0, comma)),
                                     parse_len(rest.substr(comma + 1)));
  }
  throw std::invalid_argument("parse_domain: unknown domain kind '" + kind + "'");
}

SpectralDecomposition decompose(EigenSystemPtr system, int k) {
  if (!system) throw std::invalid_argument("decompose: null eigensystem");
  if (k < 1 || k > system->distinct_count())
    throw std::invalid_argument("decompose: distinct index k out of range");
  SpectralDecomposition d;
  d.system = system;
  d.k = k;
  for (int g = 0; g < system->distinct_count(); ++g) {
    const auto& grp = system->distinct[static_cast<size_t>(g)];
    auto& dst = g < k - 1 ? d.minus_modes : (g == k - 1 ? d.zero_modes : d.plus_modes);
    dst.insert(dst.end(), grp.modes.begin(), grp.modes.end());
  }
  return d;
}

void require_compatible(const EigenSystem& system, const ModalField& field, const char* where) {
  if (field.size() != system.count)
    throw std::invalid_argument(std::string(where) + ": field does not match eigensystem (N=" +
                                std::to_string(system.count) + ", field size " +
                                std::to_string(field.size()) + ")");
}

ModalField project(const SpectralDecomposition& decomp, const ModalField& field, Part part) {
  require_compatible(*decomp.system, field, "project");
  const std::vector<int>& keep = part == Part::Minus  ? decomp.minus_modes
                                 : part == Part::Zero ? decomp.zero_modes
                                                      : decomp.plus_modes;
  ModalField out(field.size());
  for (int j : keep) out.c[static_cast<size_t>(j)] = field.c[static_cast<size_t>(j)];
  return out;
}

double fractional_norm(const EigenSystem& system, const ModalField& field, double alpha) {
  require_compatible(system, field, "fractional_norm");
  if (!(alpha >= 0.0) || !(alpha <= 1.0))
    throw std::invalid_argument("fractional_norm: alpha must lie in [0,1]");
  double s = 0.0;
  for (int j = 0; j < field.size(); ++j) {
    double w = std::pow(system.modes[static_cast<size_t>(j)].mu, alpha);
    double term = w * field.c[static_cast<size_t>(j)];
    s += term * term;
  }
  return std::sqrt(s);
}

}  // namespace resonance
