#include "pararadon/transform.hpp"

#include "pararadon/norms.hpp"
#include "pararadon/parallel.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace pararadon {
namespace {

constexpr int kMaxDim = 6;
// Fixed number of scatter buffers for the transpose; independent of the
// worker count so the summation order never changes.
constexpr Index kScatterChunks = 16;

void check_dim(int d) {
  if (d > kMaxDim) throw std::invalid_argument("transform: dimension above 6 is not supported");
}

/// Calls fn(flat_index, weight) for each nonzero multilinear weight of the
/// point p on grid g. Points outside the box produce no calls.
template <class Fn>
inline void visit_stencil(const GridSpec& g, const double* p, Fn&& fn) {
  const int d = g.dim();
  std::array<Index, kMaxDim> base{};
  std::array<double, kMaxDim> frac{};
  for (int a = 0; a < d; ++a) {
    if (p[a] < g.lo()[a] || p[a] > g.hi()[a]) return;
    double c = (p[a] - g.lo()[a]) / g.cell_width(a) - 0.5;
    const double r = std::round(c);
    if (std::abs(c - r) < 1e-10) c = r;
    const double fl = std::floor(c);
    base[static_cast<std::size_t>(a)] = static_cast<Index>(fl);
    frac[static_cast<std::size_t>(a)] = c - fl;
  }
  const unsigned corners = 1u << d;
  for (unsigned mask = 0; mask < corners; ++mask) {
    double w = 1.0;
    Index flat = 0;
    for (int a = 0; a < d; ++a) {
      const bool up = (mask >> a) & 1u;
      const Index i = base[static_cast<std::size_t>(a)] + (up ? 1 : 0);
      const double wa = up ? frac[static_cast<std::size_t>(a)] : 1.0 - frac[static_cast<std::size_t>(a)];
      if (wa == 0.0 || i < 0 || i >= g.count(a)) {
        w = 0.0;
        break;
      }
      w *= wa;
      flat += i * g.stride(a);
    }
    if (w != 0.0) fn(flat, w);
  }
}

/// Enumerates the t-samples of the plan for the point x, calling
/// fn(sample_point) where sample_point = (x' - sign*t, x_d - sign*|t|^2).
/// sign = +1 is the forward transform (sampling the input grid), sign = -1
/// the continuum adjoint (sampling the output grid).
template <class Fn>
inline void visit_samples(const TransformPlan& plan, const GridSpec& target, const double* x, double sign,
                          Fn&& fn) {
  const int d = plan.dim();
  const int m = d - 1;
  std::array<Index, kMaxDim> kmin{}, kmax{}, k{};
  for (int a = 0; a < m; ++a) {
    const auto ua = static_cast<std::size_t>(a);
    if (plan.t_count[ua] == 0) return;
    // Feasible t on this axis: x_a - sign*t in [lo_a, hi_a].
    double tl, th;
    if (sign > 0) {
      tl = x[a] - target.hi()[a];
      th = x[a] - target.lo()[a];
    } else {
      tl = target.lo()[a] - x[a];
      th = target.hi()[a] - x[a];
    }
    const double step = plan.t_step[a];
    const double lo_k = (tl - plan.t_lo[a]) / step - 0.5;
    const double hi_k = (th - plan.t_lo[a]) / step - 0.5;
    kmin[ua] = std::max<Index>(0, static_cast<Index>(std::ceil(lo_k - 1e-9)));
    kmax[ua] = std::min<Index>(plan.t_count[ua] - 1, static_cast<Index>(std::floor(hi_k + 1e-9)));
    if (kmin[ua] > kmax[ua]) return;
    k[ua] = kmin[ua];
  }
  std::array<double, kMaxDim> p{};
  const double vlo = target.lo()[m];
  const double vhi = target.hi()[m];
  while (true) {
    double t2 = 0.0;
    for (int a = 0; a < m; ++a) {
      const auto ua = static_cast<std::size_t>(a);
      const double t = plan.t_lo[a] + (static_cast<double>(k[ua]) + 0.5) * plan.t_step[a];
      p[ua] = x[a] - sign * t;
      t2 += t * t;
    }
    p[static_cast<std::size_t>(m)] = x[m] - sign * t2;
    if (p[static_cast<std::size_t>(m)] >= vlo && p[static_cast<std::size_t>(m)] <= vhi) fn(p.data());
    // odometer, last axis fastest
    int a = m - 1;
    for (; a >= 0; --a) {
      const auto ua = static_cast<std::size_t>(a);
      if (++k[ua] <= kmax[ua]) break;
      k[ua] = kmin[ua];
    }
    if (a < 0) break;
  }
}

void check_plan(const GridFunction& f, const GridSpec& expected, const char* what) {
  if (!(f.spec() == expected)) throw std::invalid_argument(std::string(what) + ": grid does not match the plan");
}

}  // namespace

double TransformPlan::t_weight() const { return t_step.prod(); }

Index TransformPlan::t_size() const {
  Index n = 1;
  for (Index c : t_count) n *= c;
  return n;
}

TransformPlan make_plan(const GridSpec& input, const GridSpec& output, double t_step, AdjointMode mode) {
  const int d = input.dim();
  check_dim(d);
  if (output.dim() != d) throw std::invalid_argument("make_plan: input and output dimensions differ");
  if (!(t_step > 0.0)) throw std::invalid_argument("make_plan: t_step must be positive");
  TransformPlan plan;
  plan.input = input;
  plan.output = output;
  plan.adjoint_mode = mode;
  plan.t_lo.resize(d - 1);
  plan.t_step.resize(d - 1);
  plan.t_count.assign(static_cast<std::size_t>(d - 1), 0);
  const double reach2 = output.hi()[d - 1] - input.lo()[d - 1];
  const double reach = reach2 > 0.0 ? std::sqrt(reach2) : -1.0;
  for (int a = 0; a < d - 1; ++a) {
    if (t_step > input.cell_width(a) * (1.0 + 1e-12))
      throw std::invalid_argument("make_plan: t_step exceeds the input cell width");
    const double lo = std::max(output.lo()[a] - input.hi()[a], -reach);
    const double hi = std::min(output.hi()[a] - input.lo()[a], reach);
    plan.t_lo[a] = lo;
    if (reach < 0.0 || !(hi > lo)) {
      plan.t_step[a] = t_step;
      continue;
    }
    const auto n = static_cast<Index>(std::ceil((hi - lo) / t_step - 1e-9));
    plan.t_count[static_cast<std::size_t>(a)] = std::max<Index>(n, 1);
    plan.t_step[a] = (hi - lo) / static_cast<double>(plan.t_count[static_cast<std::size_t>(a)]);
  }
  return plan;
}

TransformPlan make_plan(const GridSpec& grid, double t_step, AdjointMode mode) {
  return make_plan(grid, grid, t_step, mode);
}

double forward_at(const GridFunction& f, const TransformPlan& plan, const Vec& x) {
  check_plan(f, plan.input, "forward_at");
  if (x.size() != plan.dim()) throw std::invalid_argument("forward_at: point dimension mismatch");
  const auto& vals = f.values();
  double acc = 0.0;
  visit_samples(plan, plan.input, x.data(), 1.0, [&](const double* p) {
    visit_stencil(plan.input, p, [&](Index j, double w) { acc += w * vals[j]; });
  });
  return acc * plan.t_weight();
}

GridFunction forward_transform(const GridFunction& f, const TransformPlan& plan) {
  check_plan(f, plan.input, "forward_transform");
  const GridSpec& out = plan.output;
  const auto& vals = f.values();
  const double weight = plan.t_weight();
  Eigen::ArrayXd result(out.size());
  parallel_for(out.size(), [&](Index begin, Index end) {
    Vec x(out.dim());
    for (Index i = begin; i < end; ++i) {
      x = out.midpoint(i);
      double acc = 0.0;
      visit_samples(plan, plan.input, x.data(), 1.0, [&](const double* p) {
        visit_stencil(plan.input, p, [&](Index j, double w) { acc += w * vals[j]; });
      });
      result[i] = acc * weight;
    }
  });
  return GridFunction(out, std::move(result));
}

namespace {

GridFunction discrete_transpose(const GridFunction& g, const TransformPlan& plan) {
  const GridSpec& out = plan.output;
  const GridSpec& in = plan.input;
  const auto& gv = g.values();
  const Index chunks = std::min<Index>(kScatterChunks, out.size());
  const Index block = (out.size() + chunks - 1) / chunks;
  std::vector<Eigen::ArrayXd> buffers(static_cast<std::size_t>(chunks));
  parallel_for(chunks, [&](Index cb, Index ce) {
    Vec x(out.dim());
    for (Index c = cb; c < ce; ++c) {
      Eigen::ArrayXd& buf = buffers[static_cast<std::size_t>(c)];
      buf = Eigen::ArrayXd::Zero(in.size());
      const Index end = std::min(out.size(), (c + 1) * block);
      for (Index i = c * block; i < end; ++i) {
        const double gi = gv[i];
        if (gi == 0.0) continue;
        x = out.midpoint(i);
        visit_samples(plan, in, x.data(), 1.0, [&](const double* p) {
          visit_stencil(in, p, [&](Index j, double w) { buf[j] += w * gi; });
        });
      }
    }
  });
  Eigen::ArrayXd result = Eigen::ArrayXd::Zero(in.size());
  for (const auto& buf : buffers) result += buf;
  result *= plan.t_weight() * out.cell_volume() / in.cell_volume();
  return GridFunction(in, std::move(result));
}

GridFunction continuum_adjoint(const GridFunction& g, const TransformPlan& plan) {
  const GridSpec& out = plan.output;
  const GridSpec& in = plan.input;
  const auto& gv = g.values();
  const double weight = plan.t_weight();
  Eigen::ArrayXd result(in.size());
  parallel_for(in.size(), [&](Index begin, Index end) {
    Vec y(in.dim());
    for (Index i = begin; i < end; ++i) {
      y = in.midpoint(i);
      double acc = 0.0;
      visit_samples(plan, out, y.data(), -1.0, [&](const double* p) {
        visit_stencil(out, p, [&](Index j, double w) { acc += w * gv[j]; });
      });
      result[i] = acc * weight;
    }
  });
  return GridFunction(in, std::move(result));
}

}  // namespace

GridFunction adjoint_transform(const GridFunction& g, const TransformPlan& plan, AdjointMode mode) {
  check_plan(g, plan.output, "adjoint_transform");
  return mode == AdjointMode::Discrete ? discrete_transpose(g, plan) : continuum_adjoint(g, plan);
}

GridFunction adjoint_transform(const GridFunction& g, const TransformPlan& plan) {
  return adjoint_transform(g, plan, plan.adjoint_mode);
}

double bilinear_form(const GridFunction& g, const GridFunction& f, const TransformPlan& plan) {
  check_plan(g, plan.output, "bilinear_form");
  return inner_product(g, forward_transform(f, plan));
}

double rayleigh_ratio(const GridFunction& f, const GridFunction& tf) {
  const ExponentPair ex(f.dim());
  const double denom = lp_norm(f, ex.p);
  if (denom == 0.0) throw std::domain_error("rayleigh_ratio: division by zero (f vanishes identically)");
  return lp_norm(tf, ex.q) / denom;
}

double rayleigh_ratio(const GridFunction& f, const TransformPlan& plan) {
  if (f.is_zero()) throw std::domain_error("rayleigh_ratio: division by zero (f vanishes identically)");
  return rayleigh_ratio(f, forward_transform(f, plan));
}

}  // namespace pararadon
