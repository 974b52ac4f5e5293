#include "resonance/nonlinearity.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

namespace resonance {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::map<std::string, std::string> parse_kv(const std::string& args) {
  std::map<std::string, std::string> kv;
  size_t pos = 0;
  while (pos < args.size()) {
    size_t comma = args.find(',', pos);
    std::string tok = args.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    size_t eq = tok.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("nonlinearity spec: expected key=value, got '" + tok + "'");
    kv[tok.substr(0, eq)] = tok.substr(eq + 1);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return kv;
}

double kv_double(const std::map<std::string, std::string>& kv, const std::string& key,
                 double fallback) {
  auto it = kv.find(key);
  if (it == kv.end()) return fallback;
  return std::stod(it->second);
}

}  // namespace

Nonlinearity make_arctan(double beta) {
  Nonlinearity n;
  n.spec = "arctan:beta=" + fmt(beta);
  n.f = [beta](double, double, double s) { return beta * std::atan(s); };
  n.bound_m = std::abs(beta) * std::numbers::pi / 2.0;
  n.nu = beta;
  n.zero_at_origin = true;
  n.bounded = true;
  double lp = beta * std::numbers::pi / 2.0;
  n.limit_plus = [lp](double, double) { return lp; };
  n.limit_minus = [lp](double, double) { return -lp; };
  // f(x,s)*s diverges; no f_inf, no envelope.
  return n;
}

Nonlinearity make_saturating(double beta) {
  Nonlinearity n;
  n.spec = "saturating:beta=" + fmt(beta);
  n.f = [beta](double, double, double s) { return beta * s / (1.0 + s * s); };
  n.bound_m = std::abs(beta) / 2.0;  // max |s|/(1+s^2) = 1/2 at s = +-1
  n.nu = beta;
  n.zero_at_origin = true;
  n.bounded = true;
  n.limit_plus = [](double, double) { return 0.0; };
  n.limit_minus = [](double, double) { return 0.0; };
  n.limit_inf = [beta](double, double) { return beta; };
  n.envelope = [](double, double) { return 0.0; };
  n.envelope_side = beta >= 0 ? EnvelopeSide::Lower : EnvelopeSide::Upper;
  return n;
}

Nonlinearity make_constant_kernel(EigenSystemPtr system, int mode_index) {
  if (!system) throw std::invalid_argument("constant_kernel: null eigensystem");
  if (mode_index < 0 || mode_index >= system->count)
    throw std::invalid_argument("constant_kernel: mode index out of range");
  Nonlinearity n;
  n.spec = "constant_kernel:mode=" + std::to_string(mode_index + 1);
  auto y0 = [system, mode_index](double x, double y) {
    return system->eigenfunction(mode_index, x, y);
  };
  n.f = [y0](double x, double y, double) { return y0(x, y); };
  // sup|phi| for a single sine mode is the normalization constant.
  n.bound_m = system->domain.kind == DomainKind::Interval
                  ? std::sqrt(2.0 / system->domain.lx)
                  : 2.0 / std::sqrt(system->domain.lx * system->domain.ly);
  n.nu = 0.0;
  n.zero_at_origin = false;
  n.bounded = true;
  n.limit_plus = y0;
  n.limit_minus = y0;
  // f(x,s)*s diverges along s; no f_inf, no envelope.
  return n;
}

Nonlinearity make_cubic() {
  Nonlinearity n;
  n.spec = "cubic";
  n.f = [](double, double, double s) { return -s * s * s; };
  n.nu = 0.0;
  n.zero_at_origin = true;
  n.bounded = false;
  return n;
}

Nonlinearity make_linear(double a) {
  Nonlinearity n;
  n.spec = "linear:a=" + fmt(a);
  n.f = [a](double, double, double s) { return a * s; };
  n.nu = a;
  n.zero_at_origin = true;
  n.bounded = a == 0.0;
  if (a == 0.0) n.bound_m = 0.0;
  return n;
}

Nonlinearity make_zero() {
  Nonlinearity n = make_linear(0.0);
  n.spec = "zero";
  n.limit_plus = [](double, double) { return 0.0; };
  n.limit_minus = [](double, double) { return 0.0; };
  n.limit_inf = [](double, double) { return 0.0; };
  n.envelope = [](double, double) { return 0.0; };
  n.envelope_side = EnvelopeSide::Lower;
  return n;
}

Nonlinearity parse_nonlinearity(const std::string& spec, EigenSystemPtr system) {
  auto colon = spec.find(':');
  std::string family = spec.substr(0, colon);
  auto kv = colon == std::string::npos ? std::map<std::string, std::string>{}
                                       : parse_kv(spec.substr(colon + 1));
  if (family == "arctan") return make_arctan(kv_double(kv, "beta", 1.0));
  if (family == "saturating") return make_saturating(kv_double(kv, "beta", 1.0));
  if (family == "constant_kernel") {
    int mode = static_cast<int>(kv_double(kv, "mode", 1.0));
    return make_constant_kernel(system, mode - 1);
  }
  if (family == "cubic") return make_cubic();
  if (family == "linear") return make_linear(kv_double(kv, "a", 1.0));
  if (family == "zero") return make_zero();
  throw std::invalid_argument("unknown nonlinearity family '" + family + "'");
}

}  // namespace resonance
