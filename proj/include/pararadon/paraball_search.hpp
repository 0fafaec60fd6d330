#pragma once

#include "pararadon/grid.hpp"
#include "pararadon/paraball.hpp"
#include "pararadon/transform.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace pararadon {

/// height * indicator of B, membership decided at cell midpoints.
GridFunction rasterize(const Paraballd& ball, const GridSpec& spec, double height = 1.0);

/// Cell mask of B on the grid.
std::vector<bool> paraball_mask(const Paraballd& ball, const GridSpec& spec);

/// Uniformly rotated primal paraball with base in [-spread, spread]^d and
/// log-radii, log-thickness in [-log_spread, log_spread].
Paraballd random_paraball(int d, std::mt19937_64& rng, double spread = 1.0, double log_spread = 0.5);

/// Random orthogonal matrix (Haar, via QR with sign fix).
Eigen::MatrixXd random_rotation(int n, std::mt19937_64& rng);

struct FitResult {
  Paraballd ball;
  double captured = 0.0;  ///< ||f chi_B||_p
  int evaluations = 0;
};

/// Derivative-free multistart coordinate search for the paraball of volume
/// at most max_volume capturing the most L^p mass of f. `budget` bounds the
/// number of objective evaluations; budget 0 returns the initial axis-aligned
/// ball at the p-mass centroid.
FitResult fit_paraball(const GridFunction& f, double max_volume, int budget, std::uint64_t seed = 0);

struct CoverPiece {
  Paraballd ball;
  GridFunction piece;
  int level = 0;
};

struct CoverOptions {
  int budget = 500;             ///< per fit_paraball call
  double capture_threshold = 0.1;  ///< stop once ||piece||_p < threshold * ||f||_p
  std::uint64_t seed = 0;
};

struct CoverResult {
  std::vector<CoverPiece> pieces;
  GridFunction residual;
  int iterations = 0;
  int iteration_bound = 0;  ///< ceil(threshold^{-p})
  bool stopped_by_eta = false;
};

/// Greedy paraball extraction: repeatedly fit a paraball to the dominant
/// level of the residual (volume capped by that level's measure) and move
/// the captured cells into a piece, until ||T residual||_q < eta ||f||_p or
/// the capture falls below the threshold.
CoverResult greedy_cover(const GridFunction& f, double eta, const TransformPlan& plan, const CoverOptions& opts = {});

struct InteractionPartition {
  std::vector<std::vector<Index>> parts;  ///< one per ball, disjoint
  std::vector<Index> remainder;
  std::vector<double> thresholds;         ///< gamma_beta
  std::vector<GridFunction> interactions; ///< T chi_{B_beta}
  std::vector<double> ball_measures;      ///< |B_beta| on the grid
  double set_measure = 0.0;               ///< |F|
};

/// Threshold T chi_{B_beta} at gamma_beta = eta/3 |F|^{1/p - 1} |B_beta|^{1/p}
/// on F, disjointify by first index, leftovers go to the remainder.
InteractionPartition partition_by_interaction(const std::vector<bool>& F, const std::vector<Paraballd>& balls,
                                              double eta, const TransformPlan& plan);

/// Axis-aligned bounding box of a paraball.
std::pair<Vec, Vec> bounding_box(const Paraballd& ball);

/// Stratified Monte-Carlo estimate of |A n B| / max(|A|, |B|).
double intersection_fraction(const Paraballd& a, const Paraballd& b, int samples = 100000, std::uint64_t seed = 0);

/// Smallest C >= 1 with rho_i <= C * frac_i^{-C} for every sample.
double fit_intersection_envelope(const std::vector<double>& fractions, const std::vector<double>& distances);

/// Smallest C >= 1 with d_ac <= C (d_ab^C + d_bc^C) for every triple.
double fit_triangle_envelope(const std::vector<std::array<double, 3>>& triples);

}  // namespace pararadon
