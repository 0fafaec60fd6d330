#include "pararadon/extremizer.hpp"

#include "pararadon/levels.hpp"
#include "pararadon/norms.hpp"
#include "pararadon/pullback.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace pararadon {

namespace {

GridFunction normalized(const GridFunction& f, double p) {
  const double n = lp_norm(f, p);
  if (!(n > 0)) throw std::domain_error("cannot normalize the zero function");
  return f.scaled(1.0 / n);
}

GridFunction map_values(const GridFunction& f, double power) {
  return GridFunction(f.spec(), f.values().pow(power));
}

}  // namespace

double el_residual(const GridFunction& f, const TransformPlan& plan) {
  const int d = f.dim();
  const ExponentPair ex(d);
  const GridFunction fn = normalized(f, ex.p);
  const GridFunction tf = forward_transform(fn, plan);
  const double A = lp_norm(tf, ex.q);
  const GridFunction lhs = adjoint_transform(map_values(tf, d), plan);
  const Eigen::ArrayXd rhs = std::pow(A, d + 1) * fn.values().pow(1.0 / d);
  const double denom = std::sqrt(rhs.square().sum());
  if (!(denom > 0)) throw std::domain_error("el_residual: vanishing right-hand side");
  return std::sqrt((lhs.values() - rhs).square().sum()) / denom;
}

GridFunction el_iterate(const GridFunction& f, const TransformPlan& plan, double theta) {
  if (!(theta > 0 && theta <= 1)) throw std::invalid_argument("el_iterate: theta must lie in (0, 1]");
  const int d = f.dim();
  const double p = ExponentPair(d).p;
  const GridFunction fn = normalized(f, p);
  const GridFunction tf = forward_transform(fn, plan);
  const GridFunction cand = normalized(map_values(adjoint_transform(map_values(tf, d), plan), d), p);
  if (theta == 1.0) return cand;
  return normalized(fn.scaled(1.0 - theta) + cand.scaled(theta), p);
}

ExtremizeTrace extremize(const GridFunction& f0, const TransformPlan& plan, const ExtremizeOptions& opts) {
  if (f0.is_zero()) throw std::domain_error("extremize: initial datum vanishes");
  const double p = ExponentPair(f0.dim()).p;
  ExtremizeTrace trace;
  GridFunction f = normalized(f0, p);
  double phi = rayleigh_ratio(f, plan);
  trace.rows.push_back({0, phi, el_residual(f, plan), std::abs(lp_norm(f, p) - 1.0)});
  trace.A_estimate = phi;
  for (int it = 1; it <= opts.max_iters; ++it) {
    f = el_iterate(f, plan, opts.theta);
    const double next = rayleigh_ratio(f, plan);
    trace.rows.push_back({it, next, el_residual(f, plan), std::abs(lp_norm(f, p) - 1.0)});
    trace.A_estimate = std::max(trace.A_estimate, next);
    const double change = std::abs(next - phi) / phi;
    phi = next;
    if (change < opts.tol) {
      trace.converged = true;
      break;
    }
  }
  trace.final = std::move(f);
  return trace;
}

GridFunction gaussian_init(const GridSpec& spec, double sigma) {
  if (!(sigma > 0)) throw std::invalid_argument("gaussian_init: sigma must be positive");
  return GridFunction::sample(spec, [sigma](const Vec& x) { return std::exp(-x.squaredNorm() / (2 * sigma * sigma)); });
}

Renormalization renormalize(const GridFunction& f) {
  if (f.is_zero()) throw std::domain_error("renormalize: f vanishes identically");
  const GridSpec& spec = f.spec();
  const int d = f.dim();
  const double p = ExponentPair(d).p;
  const int j = rough_decompose(f).dominant(p).j;

  Vec centroid = Vec::Zero(d);
  double mass = 0;
  for (Index i = 0; i < f.size(); ++i) {
    if (f[i] <= 0) continue;
    const double w = std::pow(f[i], p);
    centroid += w * spec.midpoint(i);
    mass += w;
  }
  centroid /= mass;

  // J^{d/(d+1)} = r^d for the scaling r, so r = 2^{-j/d} moves level j to 0
  const double r = std::exp2(-static_cast<double>(j) / d);
  const GroupElementd phi = compose(GroupElementd::translation(centroid), GroupElementd::scaling(d, r));
  const auto [lo, hi] = preimage_bounds(phi, spec.lo(), spec.hi(), 0.0);
  const GridSpec out(lo, hi, spec.counts());
  return {phi, pullback(phi, f, out)};
}

std::vector<double> positivity_profile(const GridFunction& f, const std::vector<std::pair<Vec, Vec>>& boxes) {
  std::vector<double> mins(boxes.size(), std::numeric_limits<double>::infinity());
  for (Index i = 0; i < f.size(); ++i) {
    const Vec x = f.spec().midpoint(i);
    for (std::size_t b = 0; b < boxes.size(); ++b)
      if ((x.array() >= boxes[b].first.array()).all() && (x.array() <= boxes[b].second.array()).all())
        mins[b] = std::min(mins[b], f[i]);
  }
  return mins;
}

std::vector<DecayRow> decay_profile(const GridFunction& f, double shell_width) {
  if (!(shell_width > 0)) throw std::invalid_argument("decay_profile: shell width must be positive");
  const int m = f.dim() - 1;
  std::vector<DecayRow> shells;
  for (Index i = 0; i < f.size(); ++i) {
    const Vec x = f.spec().midpoint(i);
    const double rad2 = x.head(m).squaredNorm();
    if (std::abs(x[m] - rad2) >= 1.0) continue;
    const double rad = std::sqrt(rad2);
    const auto k = static_cast<std::size_t>(std::floor(rad / shell_width));
    if (k >= shells.size()) shells.resize(k + 1);
    DecayRow& row = shells[k];
    if (row.cells == 0 || f[i] < row.min_value) {
      row.min_value = f[i];
      row.radius = rad;
    }
    ++row.cells;
  }
  std::vector<DecayRow> out;
  for (std::size_t k = 0; k < shells.size(); ++k) {
    if (shells[k].cells == 0) continue;
    shells[k].shell_lo = static_cast<double>(k) * shell_width;
    shells[k].shell_hi = static_cast<double>(k + 1) * shell_width;
    out.push_back(shells[k]);
  }
  return out;
}

double fit_decay_exponent(const std::vector<DecayRow>& rows) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (const DecayRow& r : rows) {
    if (!(r.min_value > 0)) continue;
    const double x = std::log1p(r.radius), y = std::log(r.min_value);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  const double den = n * sxx - sx * sx;
  if (n < 2 || !(std::abs(den) > 0)) throw std::domain_error("fit_decay_exponent: need two distinct radii");
  return (n * sxy - sx * sy) / den;
}

}  // namespace pararadon
