#pragma once

#include "pararadon/grid.hpp"

#include <vector>

namespace pararadon {

enum class AdjointMode { Discrete, Continuum };

/// Discretization of T f(x) = \int f(x' - t, x_d - |t|^2) dt on a pair of
/// grids. The t-box is the set of parameters for which a point of the output
/// box can reach the input box; it is sampled at midpoints with a step no
/// larger than the input cell width in every x' axis.
struct TransformPlan {
  GridSpec input;
  GridSpec output;
  Vec t_lo;
  Vec t_step;
  std::vector<Index> t_count;
  AdjointMode adjoint_mode = AdjointMode::Discrete;

  int dim() const { return input.dim(); }
  /// Quadrature weight of one t-sample, prod(t_step).
  double t_weight() const;
  Index t_size() const;
};

TransformPlan make_plan(const GridSpec& input, const GridSpec& output, double t_step,
                        AdjointMode mode = AdjointMode::Discrete);
/// Output grid equal to the input grid.
TransformPlan make_plan(const GridSpec& grid, double t_step, AdjointMode mode = AdjointMode::Discrete);

/// T f sampled on plan.output.
GridFunction forward_transform(const GridFunction& f, const TransformPlan& plan);
/// T f at a single point, with the same quadrature as forward_transform.
double forward_at(const GridFunction& f, const TransformPlan& plan, const Vec& x);

/// T* g on plan.input. Discrete mode is the exact transpose of
/// forward_transform under the grid inner products; continuum mode is a
/// quadrature of \int g(y' + t, y_d + |t|^2) dt.
GridFunction adjoint_transform(const GridFunction& g, const TransformPlan& plan);
GridFunction adjoint_transform(const GridFunction& g, const TransformPlan& plan, AdjointMode mode);

/// <g, T f> on the output grid.
double bilinear_form(const GridFunction& g, const GridFunction& f, const TransformPlan& plan);

/// ||T f||_{d+1} / ||f||_{(d+1)/d}.
double rayleigh_ratio(const GridFunction& f, const TransformPlan& plan);
/// Same, reusing an already computed T f.
double rayleigh_ratio(const GridFunction& f, const GridFunction& tf);

}  // namespace pararadon
