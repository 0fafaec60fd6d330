#include "pararadon/pullback.hpp"

#include "pararadon/parallel.hpp"

#include <cmath>
#include <limits>

namespace pararadon {
namespace {

template <class Map>
GridFunction resample(const GridFunction& f, const GridSpec& out, double factor, Map&& map) {
  if (out.dim() != f.dim()) throw std::invalid_argument("pullback: dimension mismatch");
  Eigen::ArrayXd v(out.size());
  parallel_for(out.size(), [&](Index b, Index e) {
    for (Index i = b; i < e; ++i) v[i] = interpolate(f, map(out.midpoint(i))) * factor;
  });
  return GridFunction(out, std::move(v));
}

template <class Map>
std::pair<Vec, Vec> lattice_bounds(int d, const Vec& lo, const Vec& hi, double pad, Map&& map) {
  constexpr int kPerAxis = 17;
  std::vector<Index> counts(static_cast<std::size_t>(d), kPerAxis);
  Index total = 1;
  for (int a = 0; a < d; ++a) total *= kPerAxis;
  Vec blo = Vec::Constant(d, std::numeric_limits<double>::infinity());
  Vec bhi = -blo;
  Vec x(d);
  for (Index k = 0; k < total; ++k) {
    Index rem = k;
    for (int a = d - 1; a >= 0; --a) {
      const Index i = rem % kPerAxis;
      rem /= kPerAxis;
      x[a] = lo[a] + (hi[a] - lo[a]) * static_cast<double>(i) / (kPerAxis - 1);
    }
    const Vec y = map(x);
    blo = blo.cwiseMin(y);
    bhi = bhi.cwiseMax(y);
  }
  const Vec w = bhi - blo;
  return {blo - pad * w, bhi + pad * w};
}

}  // namespace

GridFunction pullback(const GroupElementd& phi, const GridFunction& f, const GridSpec& out) {
  const double d = phi.dim();
  const double factor = std::pow(phi.jacobian(), d / (d + 1.0));
  return resample(f, out, factor, [&](const Vec& x) { return phi.apply(x); });
}

GridFunction partner_pullback(const GroupElementd& phi, const GridFunction& f, const GridSpec& out) {
  const double d = phi.dim();
  const double factor = std::pow(phi.partner_jacobian(), d / (d + 1.0));
  return resample(f, out, factor, [&](const Vec& x) { return phi.apply_partner(x); });
}

std::pair<Vec, Vec> preimage_bounds(const GroupElementd& phi, const Vec& lo, const Vec& hi, double pad) {
  const GroupElementd inv = inverse(phi);
  return lattice_bounds(phi.dim(), lo, hi, pad, [&](const Vec& x) { return inv.apply(x); });
}

std::pair<Vec, Vec> partner_preimage_bounds(const GroupElementd& phi, const Vec& lo, const Vec& hi, double pad) {
  const GroupElementd inv = inverse(phi);
  return lattice_bounds(phi.dim(), lo, hi, pad, [&](const Vec& x) { return inv.apply_partner(x); });
}

}  // namespace pararadon
