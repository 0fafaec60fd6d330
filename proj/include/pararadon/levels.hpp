#pragma once

#include "pararadon/grid.hpp"

#include <set>
#include <vector>

namespace pararadon {

/// One dyadic level of a rough level set decomposition: on the cells of E_j,
/// f = 2^j * residual with 1 <= residual < 2.
struct Level {
  int j = 0;
  std::vector<Index> cells;
  std::vector<double> residuals;
};

/// f = sum_j 2^j f_j with disjoint supports E_j covering {f > 0}.
/// Levels are sorted by increasing j.
class RoughDecomposition {
 public:
  RoughDecomposition(GridSpec spec, std::vector<Level> levels);

  const GridSpec& spec() const { return spec_; }
  const std::vector<Level>& levels() const { return levels_; }
  bool empty() const { return levels_.empty(); }

  /// |E_j| by quadrature.
  double measure(const Level& level) const;
  /// 2^j |E_j|^{1/p}, the quantity the Lorentz quasinorm sums.
  double score(const Level& level, double p) const;
  /// Level with the largest score (ties go to the lower j).
  const Level& dominant(double p) const;

  GridFunction reconstruct() const;
  /// Reconstructs only the levels whose j is in keep.
  GridFunction reconstruct(const std::set<int>& keep) const;

 private:
  GridSpec spec_;
  std::vector<Level> levels_;
};

RoughDecomposition rough_decompose(const GridFunction& f);

/// (sum_j (2^j |E_j|^{1/p})^r)^{1/r}; r = infinity gives the max level score.
double lorentz_quasinorm(const GridFunction& f, double p, double r);

struct EntropyRefinement {
  GridFunction refined;
  std::set<int> kept_levels;
};

/// Keeps the levels with 2^j |E_j|^{1/p} > eta. With r >= p the discarded
/// part satisfies ||f - refined||_{p,r}^r <= eta^{r-p} ||f||_p^p and
/// |kept| <= eta^{-p} ||f||_p^p.
EntropyRefinement entropy_refine(const GridFunction& f, double eta, double p, double r);

/// The discarded part sum over levels with 2^j |E_j|^{1/p} < eta ||f||_p.
GridFunction trim_small_levels(const GridFunction& f, double eta, double p);

}  // namespace pararadon
