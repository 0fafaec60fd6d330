#include "pararadon/paraball_search.hpp"

#include "pararadon/levels.hpp"
#include "pararadon/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace pararadon {

namespace {

// Bulk membership: a d x n matrix of points against one ball.
Eigen::Array<bool, Eigen::Dynamic, 1> members(const Paraballd& ball, const Eigen::MatrixXd& pts) {
  const Index m = ball.dim() - 1;
  const Eigen::MatrixXd y =
      ball.radii().cwiseInverse().asDiagonal() * (ball.basis().transpose() * (pts.topRows(m).colwise() - ball.base().head(m)));
  const Eigen::ArrayXd ell = y.colwise().squaredNorm().transpose().array();
  const Eigen::ArrayXd q = (pts.topRows(m).colwise() - ball.apex().head(m)).colwise().squaredNorm().transpose().array();
  const Eigen::ArrayXd slab = pts.row(m).transpose().array() - ball.apex()(m) - double(ball.sign()) * q;
  return (ell < 1.0) && (slab.abs() < ball.rho());
}

Eigen::MatrixXd all_midpoints(const GridSpec& spec) {
  Eigen::MatrixXd pts(spec.dim(), spec.size());
  for (Index i = 0; i < spec.size(); ++i) pts.col(i) = spec.midpoint(i);
  return pts;
}

Eigen::MatrixXd givens_basis(int m, const double* angles) {
  Eigen::MatrixXd E = Eigen::MatrixXd::Identity(m, m);
  int k = 0;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      const double c = std::cos(angles[k]), s = std::sin(angles[k]);
      ++k;
      const Eigen::VectorXd ci = E.col(i), cj = E.col(j);
      E.col(i) = c * ci - s * cj;
      E.col(j) = s * ci + c * cj;
    }
  return E;
}

double unit_ball_volume(int m) { return std::pow(std::numbers::pi, m / 2.0) / std::tgamma(m / 2.0 + 1.0); }

// Flat parameter vector: base (d) | apex offset (m) | log radii (m) | log rho | angles.
struct FitProblem {
  int d, m, n_angles, n_params;
  double max_volume;
  Eigen::MatrixXd pts;
  Eigen::ArrayXd weights;

  Paraballd ball(Eigen::VectorXd& x) const {
    // project onto the volume budget by uniform scaling of radii and thickness
    const double logvol = std::log(2.0 * unit_ball_volume(m)) + x.segment(d + 2 * m, 1)(0) + x.segment(d + m, m).sum();
    const double excess = logvol - std::log(max_volume);
    if (excess > 0) x.segment(d + m, m + 1).array() -= excess / d;
    const Eigen::VectorXd radii = x.segment(d + m, m).array().exp();
    const double rho = std::exp(x(d + 2 * m));
    return Paraballd::from_offset(x.head(d), x.segment(d, m), givens_basis(m, x.data() + d + 2 * m + 1), radii, rho);
  }

  double mass(const Paraballd& b) const { return members(b, pts).select(weights, 0.0).sum(); }
};

}  // namespace

std::vector<bool> paraball_mask(const Paraballd& ball, const GridSpec& spec) {
  if (ball.dim() != spec.dim()) throw std::invalid_argument("paraball_mask: dimension mismatch");
  const auto in = members(ball, all_midpoints(spec));
  std::vector<bool> mask(static_cast<std::size_t>(spec.size()));
  for (Index i = 0; i < spec.size(); ++i) mask[static_cast<std::size_t>(i)] = in[i];
  return mask;
}

GridFunction rasterize(const Paraballd& ball, const GridSpec& spec, double height) {
  const auto mask = paraball_mask(ball, spec);
  Eigen::ArrayXd v = Eigen::ArrayXd::Zero(spec.size());
  for (Index i = 0; i < spec.size(); ++i)
    if (mask[static_cast<std::size_t>(i)]) v[i] = height;
  return GridFunction(spec, std::move(v));
}

Eigen::MatrixXd random_rotation(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::MatrixXd A(n, n);
  for (Index i = 0; i < A.size(); ++i) A.data()[i] = g(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(A);
  Eigen::MatrixXd Q = qr.householderQ();
  const Eigen::VectorXd diag = qr.matrixQR().diagonal();
  for (int j = 0; j < n; ++j)
    if (diag[j] < 0) Q.col(j) *= -1.0;
  return Q;
}

Paraballd random_paraball(int d, std::mt19937_64& rng, double spread, double log_spread) {
  const int m = d - 1;
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::normal_distribution<double> g(0.0, 0.5 * spread);
  Vec base(d), w(m), logr(m);
  // points on a 2^-20 lattice keep the incidence relation exact in floating point
  auto snap = [](double x) { return std::ldexp(std::round(std::ldexp(x, 20)), -20); };
  for (int i = 0; i < d; ++i) base[i] = snap(spread * u(rng));
  for (int i = 0; i < m; ++i) w[i] = snap(g(rng));
  for (int i = 0; i < m; ++i) logr[i] = log_spread * u(rng);
  const double rho = std::exp(log_spread * u(rng));
  const Eigen::MatrixXd E = random_rotation(m, rng);
  return Paraballd::from_offset(base, w, E, logr.array().exp().matrix(), rho);
}

FitResult fit_paraball(const GridFunction& f, double max_volume, int budget, std::uint64_t seed) {
  if (!(max_volume > 0)) throw std::invalid_argument("fit_paraball: max_volume must be positive");
  if (f.is_zero()) throw std::invalid_argument("fit_paraball: f vanishes identically");
  const GridSpec& spec = f.spec();
  const int d = spec.dim(), m = d - 1;
  const double p = ExponentPair(d).p;

  FitProblem prob{d, m, m * (m - 1) / 2, 0, max_volume, {}, {}};
  prob.n_params = d + 2 * m + 1 + prob.n_angles;
  std::vector<Index> support;
  for (Index i = 0; i < f.size(); ++i)
    if (f[i] > 0) support.push_back(i);
  prob.pts.resize(d, static_cast<Index>(support.size()));
  prob.weights.resize(static_cast<Index>(support.size()));
  for (std::size_t k = 0; k < support.size(); ++k) {
    prob.pts.col(static_cast<Index>(k)) = spec.midpoint(support[k]);
    prob.weights[static_cast<Index>(k)] = std::pow(f[support[k]], p) * spec.cell_volume();
  }

  // p-mass moments give the initial axis-aligned shape
  const double total = prob.weights.sum();
  const Vec centroid = prob.pts * prob.weights.matrix() / total;
  const Eigen::MatrixXd centered = prob.pts.colwise() - centroid;
  Vec radii0(m);
  for (int j = 0; j < m; ++j)
    radii0[j] = std::max(std::sqrt(3.0 * (centered.row(j).array().square() * prob.weights.transpose()).sum() / total),
                         spec.cell_width(j));
  const Eigen::ArrayXd slab = centered.row(m).transpose().array() - centered.topRows(m).colwise().squaredNorm().transpose().array();
  const double slab_mean = (slab * prob.weights).sum() / total;
  const double rho0 =
      std::max(std::sqrt(3.0 * ((slab - slab_mean).square() * prob.weights).sum() / total), spec.cell_width(m));

  auto initial = [&](const Vec& base) {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(prob.n_params);
    x.head(d) = base;
    x.segment(d + m, m) = radii0.array().log().matrix();
    x(d + 2 * m) = std::log(rho0);
    return x;
  };

  Eigen::VectorXd best_x = initial(centroid);
  Paraballd best_ball = prob.ball(best_x);
  int evals = 0;
  if (budget <= 0) return {best_ball, std::pow(prob.mass(best_ball), 1.0 / p), 0};
  double best = prob.mass(best_ball);
  ++evals;

  // candidate starts: centroid plus support cells drawn by p-mass
  std::mt19937_64 rng(seed);
  std::discrete_distribution<std::size_t> pick(prob.weights.data(), prob.weights.data() + prob.weights.size());
  struct Start {
    Eigen::VectorXd x;
    double value;
  };
  std::vector<Start> starts{{best_x, best}};
  const int n_starts = std::min(budget / 4, 15);
  for (int s = 0; s < n_starts && evals < budget; ++s) {
    Eigen::VectorXd x = initial(prob.pts.col(static_cast<Index>(pick(rng))));
    const double val = prob.mass(prob.ball(x));
    ++evals;
    starts.push_back({x, val});
  }
  std::stable_sort(starts.begin(), starts.end(), [](const Start& a, const Start& b) { return a.value > b.value; });

  Eigen::VectorXd step0(prob.n_params);
  step0.head(m).setConstant(0.5 * radii0.mean());
  step0(m) = 0.5 * rho0;
  step0.segment(d, m).setConstant(0.5 * radii0.mean());
  step0.tail(m + 1 + prob.n_angles).setConstant(0.3);

  for (const Start& st : starts) {
    if (evals >= budget) break;
    Eigen::VectorXd x = st.x;
    prob.ball(x);
    double cur = st.value;
    Eigen::VectorXd step = step0;
    while (evals < budget && (step.array() > 1e-3 * step0.array()).any()) {
      bool improved = false;
      for (int k = 0; k < prob.n_params && evals < budget; ++k) {
        for (double dir : {1.0, -1.0}) {
          if (evals >= budget) break;
          Eigen::VectorXd y = x;
          y(k) += dir * step(k);
          const Paraballd b = prob.ball(y);
          const double val = prob.mass(b);
          ++evals;
          if (val > cur) {
            x = y;
            cur = val;
            improved = true;
            break;
          }
        }
      }
      if (!improved) step *= 0.5;
    }
    if (cur > best) {
      best = cur;
      best_x = x;
    }
  }
  best_ball = prob.ball(best_x);
  return {best_ball, std::pow(best, 1.0 / p), evals};
}

CoverResult greedy_cover(const GridFunction& f, double eta, const TransformPlan& plan, const CoverOptions& opts) {
  if (!(eta > 0)) throw std::invalid_argument("greedy_cover: eta must be positive");
  if (f.is_zero()) throw std::invalid_argument("greedy_cover: f vanishes identically");
  if (!(opts.capture_threshold > 0 && opts.capture_threshold <= 1))
    throw std::invalid_argument("greedy_cover: capture threshold must lie in (0, 1]");
  const ExponentPair ex(f.dim());
  const double norm_f = lp_norm(f, ex.p);

  CoverResult out;
  out.residual = f;
  out.iteration_bound = static_cast<int>(std::ceil(std::pow(opts.capture_threshold, -ex.p) - 1e-12));
  while (!out.residual.is_zero() && out.iterations < out.iteration_bound) {
    if (lp_norm(forward_transform(out.residual, plan), ex.q) < eta * norm_f) {
      out.stopped_by_eta = true;
      break;
    }
    const RoughDecomposition dec = rough_decompose(out.residual);
    const Level& level = dec.dominant(ex.p);
    std::vector<bool> in_level(static_cast<std::size_t>(f.size()), false);
    for (Index c : level.cells) in_level[static_cast<std::size_t>(c)] = true;
    const GridFunction target = out.residual.masked(in_level);

    const FitResult fit =
        fit_paraball(target, dec.measure(level), opts.budget, opts.seed + static_cast<std::uint64_t>(out.iterations));
    std::vector<bool> take = paraball_mask(fit.ball, f.spec());
    for (std::size_t i = 0; i < take.size(); ++i) take[i] = take[i] && in_level[i];
    GridFunction piece = out.residual.masked(take);
    if (lp_norm(piece, ex.p) < opts.capture_threshold * norm_f) break;

    std::vector<bool> keep(take.size());
    for (std::size_t i = 0; i < take.size(); ++i) keep[i] = !take[i];
    out.residual = out.residual.masked(keep);
    out.pieces.push_back({fit.ball, std::move(piece), level.j});
    ++out.iterations;
  }
  return out;
}

InteractionPartition partition_by_interaction(const std::vector<bool>& F, const std::vector<Paraballd>& balls,
                                              double eta, const TransformPlan& plan) {
  if (!(eta > 0 && eta <= 1)) throw std::invalid_argument("partition_by_interaction: eta must lie in (0, 1]");
  if (balls.empty()) throw std::invalid_argument("partition_by_interaction: no balls");
  const GridSpec& out_spec = plan.output;
  if (static_cast<Index>(F.size()) != out_spec.size())
    throw std::invalid_argument("partition_by_interaction: mask does not match the output grid");
  const double p = ExponentPair(plan.dim()).p;

  InteractionPartition part;
  part.set_measure = static_cast<double>(std::count(F.begin(), F.end(), true)) * out_spec.cell_volume();
  part.parts.resize(balls.size());
  for (const Paraballd& b : balls) {
    const GridFunction chi = rasterize(b, plan.input);
    const double measure = chi.values().sum() * plan.input.cell_volume();
    part.ball_measures.push_back(measure);
    part.thresholds.push_back(eta / 3.0 * std::pow(part.set_measure, 1.0 / p - 1.0) * std::pow(measure, 1.0 / p));
    part.interactions.push_back(forward_transform(chi, plan));
  }
  for (Index i = 0; i < out_spec.size(); ++i) {
    if (!F[static_cast<std::size_t>(i)]) continue;
    bool placed = false;
    for (std::size_t b = 0; b < balls.size() && !placed; ++b)
      if (part.interactions[b][i] > part.thresholds[b]) {
        part.parts[b].push_back(i);
        placed = true;
      }
    if (!placed) part.remainder.push_back(i);
  }
  return part;
}

std::pair<Vec, Vec> bounding_box(const Paraballd& ball) {
  const int d = ball.dim(), m = d - 1;
  const Vec half = (ball.basis().array().square().matrix() * ball.radii().array().square().matrix()).array().sqrt();
  Vec lo(d), hi(d);
  lo.head(m) = ball.base().head(m) - half;
  hi.head(m) = ball.base().head(m) + half;
  double qmin = 0, qmax = 0;
  for (int i = 0; i < m; ++i) {
    const double c = ball.apex()[i];
    const double near = std::clamp(c, lo[i], hi[i]) - c;
    qmin += near * near;
    qmax += std::max((lo[i] - c) * (lo[i] - c), (hi[i] - c) * (hi[i] - c));
  }
  if (ball.sign() > 0) {
    lo[m] = ball.apex()[m] + qmin - ball.rho();
    hi[m] = ball.apex()[m] + qmax + ball.rho();
  } else {
    lo[m] = ball.apex()[m] - qmax - ball.rho();
    hi[m] = ball.apex()[m] - qmin + ball.rho();
  }
  return {lo, hi};
}

double intersection_fraction(const Paraballd& a, const Paraballd& b, int samples, std::uint64_t seed) {
  if (a.dim() != b.dim()) throw std::invalid_argument("intersection_fraction: dimension mismatch");
  if (samples < 1) throw std::invalid_argument("intersection_fraction: need at least one sample");
  const int d = a.dim();
  const auto [alo, ahi] = bounding_box(a);
  const auto [blo, bhi] = bounding_box(b);
  const Vec lo = alo.cwiseMax(blo), hi = ahi.cwiseMin(bhi);
  if ((hi.array() <= lo.array()).any()) return 0.0;

  const int k = std::max(1, static_cast<int>(std::floor(std::pow(static_cast<double>(samples), 1.0 / d) + 1e-9)));
  Index strata = 1;
  for (int i = 0; i < d; ++i) strata *= k;
  const Index per = std::max<Index>(1, samples / strata);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Eigen::MatrixXd pts(d, strata * per);
  Index col = 0;
  for (Index s = 0; s < strata; ++s) {
    Index rem = s;
    Eigen::VectorXd cell(d);
    for (int i = d - 1; i >= 0; --i) {
      cell[i] = static_cast<double>(rem % k);
      rem /= k;
    }
    for (Index r = 0; r < per; ++r, ++col)
      for (int i = 0; i < d; ++i) pts(i, col) = lo[i] + (hi[i] - lo[i]) * (cell[i] + u(rng)) / k;
  }
  const auto both = members(a, pts) && members(b, pts);
  const double box = (hi - lo).prod();
  const double inter = box * static_cast<double>(both.count()) / static_cast<double>(pts.cols());
  return inter / std::max(a.volume(), b.volume());
}

namespace {

template <typename Feasible>
double bisect_constant(Feasible ok) {
  double lo = 1.0, hi = 2.0;
  if (ok(lo)) return lo;
  while (!ok(hi)) {
    hi *= 2.0;
    if (hi > 1e6) return std::numeric_limits<double>::infinity();
  }
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (ok(mid) ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace

double fit_intersection_envelope(const std::vector<double>& fractions, const std::vector<double>& distances) {
  if (fractions.size() != distances.size()) throw std::invalid_argument("fit_intersection_envelope: size mismatch");
  return bisect_constant([&](double C) {
    for (std::size_t i = 0; i < fractions.size(); ++i)
      if (fractions[i] > 0 && distances[i] > C * std::pow(std::min(fractions[i], 1.0), -C)) return false;
    return true;
  });
}

double fit_triangle_envelope(const std::vector<std::array<double, 3>>& triples) {
  return bisect_constant([&](double C) {
    for (const auto& t : triples)
      if (t[2] > C * (std::pow(t[0], C) + std::pow(t[1], C))) return false;
    return true;
  });
}

}  // namespace pararadon
