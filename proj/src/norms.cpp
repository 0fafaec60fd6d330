#include "pararadon/norms.hpp"

#include <cmath>
#include <stdexcept>

namespace pararadon {

ExponentPair::ExponentPair(int d) : dim(d), p((d + 1.0) / d), q(d + 1.0) {
  if (d < 2) throw std::invalid_argument("ExponentPair: dimension must be at least 2");
}

namespace {
void check_exponent(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw std::invalid_argument("invalid exponent: need 1 <= p < inf");
}
}  // namespace

double lp_mass(const GridFunction& f, double p) {
  check_exponent(p);
  return f.values().pow(p).sum() * f.spec().cell_volume();
}

double lp_norm(const GridFunction& f, double p) { return std::pow(lp_mass(f, p), 1.0 / p); }

double l2_norm(const GridFunction& f) { return std::sqrt(f.values().square().sum() * f.spec().cell_volume()); }

double tail_mass(const GridFunction& f, double radius, double p) {
  check_exponent(p);
  const GridSpec& g = f.spec();
  double acc = 0.0;
  for (Index i = 0; i < g.size(); ++i) {
    if (f[i] == 0.0) continue;
    if (g.midpoint(i).norm() >= radius) acc += std::pow(f[i], p);
  }
  return acc * g.cell_volume();
}

double psi_integral(const GridFunction& f, const std::function<double(double)>& psi) {
  if (psi(0.0) != 0.0) throw std::invalid_argument("psi_integral: psi(0) must be 0");
  double acc = 0.0;
  for (Index i = 0; i < f.size(); ++i) acc += psi(f[i]);
  return acc * f.spec().cell_volume();
}

}  // namespace pararadon
