#pragma once

#include "pararadon/grid.hpp"
#include "pararadon/symmetry.hpp"
#include "pararadon/transform.hpp"

#include <vector>

namespace pararadon {

/// Relative grid-L^2 defect of T*((Tf)^d) = A^{d+1} f^{1/d} with A the
/// Rayleigh ratio of f. f is normalized in L^p first.
double el_residual(const GridFunction& f, const TransformPlan& plan);

/// f <- normalize((1 - theta) f + theta * normalize((T*((Tf)^d))^d)).
GridFunction el_iterate(const GridFunction& f, const TransformPlan& plan, double theta = 0.5);

struct ExtremizeOptions {
  int max_iters = 500;
  double tol = 1e-6;
  double theta = 0.5;
};

struct TraceRow {
  int iter = 0;
  double phi = 0.0;
  double residual = 0.0;
  double pnorm_drift = 0.0;  ///< | ||f_k||_p - 1 |
};

struct ExtremizeTrace {
  std::vector<TraceRow> rows;
  GridFunction final;
  double A_estimate = 0.0;  ///< max recorded Phi: a lower bound for the discrete operator norm
  bool converged = false;
};

ExtremizeTrace extremize(const GridFunction& f0, const TransformPlan& plan, const ExtremizeOptions& opts = {});

/// exp(-|x|^2 / (2 sigma^2)) on the grid.
GridFunction gaussian_init(const GridSpec& spec, double sigma = 1.0);

struct Renormalization {
  GroupElementd phi;
  GridFunction g;
};

/// Dilation taking the dominant rough level to j = 0, composed with the
/// translation moving the f^p centroid to the origin; g = phi^* f sampled on
/// the preimage of f's box (same counts).
Renormalization renormalize(const GridFunction& f);

/// Minimum of f over the cells whose midpoints lie in each box [lo, hi].
/// Boxes containing no cell report +infinity.
std::vector<double> positivity_profile(const GridFunction& f, const std::vector<std::pair<Vec, Vec>>& boxes);

struct DecayRow {
  double shell_lo = 0.0;
  double shell_hi = 0.0;
  double radius = 0.0;  ///< |x'| at the minimizing cell
  double min_value = 0.0;
  Index cells = 0;
};

/// Minima of f over |x'| shells within the tube |x_d - |x'|^2| < 1.
/// Empty shells are omitted.
std::vector<DecayRow> decay_profile(const GridFunction& f, double shell_width = 0.25);

/// Least-squares slope of log(min) against log(1 + radius) over rows with a
/// positive minimum.
double fit_decay_exponent(const std::vector<DecayRow>& rows);

}  // namespace pararadon
