#include "pararadon/levels.hpp"

#include "pararadon/norms.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace pararadon {

RoughDecomposition::RoughDecomposition(GridSpec spec, std::vector<Level> levels)
    : spec_(std::move(spec)), levels_(std::move(levels)) {}

double RoughDecomposition::measure(const Level& level) const {
  return static_cast<double>(level.cells.size()) * spec_.cell_volume();
}

double RoughDecomposition::score(const Level& level, double p) const {
  return std::ldexp(std::pow(measure(level), 1.0 / p), level.j);
}

const Level& RoughDecomposition::dominant(double p) const {
  if (levels_.empty()) throw std::domain_error("RoughDecomposition::dominant: zero function");
  const Level* best = &levels_.front();
  double best_score = score(*best, p);
  for (const auto& level : levels_) {
    const double s = score(level, p);
    if (s > best_score) {
      best = &level;
      best_score = s;
    }
  }
  return *best;
}

GridFunction RoughDecomposition::reconstruct() const {
  Eigen::ArrayXd v = Eigen::ArrayXd::Zero(spec_.size());
  for (const auto& level : levels_)
    for (std::size_t k = 0; k < level.cells.size(); ++k)
      v[level.cells[k]] = std::ldexp(level.residuals[k], level.j);
  return GridFunction(spec_, std::move(v));
}

GridFunction RoughDecomposition::reconstruct(const std::set<int>& keep) const {
  Eigen::ArrayXd v = Eigen::ArrayXd::Zero(spec_.size());
  for (const auto& level : levels_) {
    if (!keep.count(level.j)) continue;
    for (std::size_t k = 0; k < level.cells.size(); ++k)
      v[level.cells[k]] = std::ldexp(level.residuals[k], level.j);
  }
  return GridFunction(spec_, std::move(v));
}

RoughDecomposition rough_decompose(const GridFunction& f) {
  std::map<int, Level> by_level;
  for (Index i = 0; i < f.size(); ++i) {
    const double w = f[i];
    if (w == 0.0) continue;
    // frexp: w = m 2^e with m in [0.5, 1), so w = (2m) 2^(e-1) exactly.
    int e = 0;
    const double m = std::frexp(w, &e);
    Level& level = by_level[e - 1];
    level.j = e - 1;
    level.cells.push_back(i);
    level.residuals.push_back(2.0 * m);
  }
  std::vector<Level> levels;
  levels.reserve(by_level.size());
  for (auto& [j, level] : by_level) levels.push_back(std::move(level));
  return RoughDecomposition(f.spec(), std::move(levels));
}

double lorentz_quasinorm(const GridFunction& f, double p, double r) {
  if (!(p > 1.0) || !std::isfinite(p)) throw std::invalid_argument("lorentz_quasinorm: need p > 1");
  if (!(r >= 1.0)) throw std::invalid_argument("lorentz_quasinorm: need r >= 1");
  const RoughDecomposition dec = rough_decompose(f);
  if (std::isinf(r)) {
    double best = 0.0;
    for (const auto& level : dec.levels()) best = std::max(best, dec.score(level, p));
    return best;
  }
  double acc = 0.0;
  for (const auto& level : dec.levels()) acc += std::pow(dec.score(level, p), r);
  return std::pow(acc, 1.0 / r);
}

EntropyRefinement entropy_refine(const GridFunction& f, double eta, double p, double r) {
  if (!(eta > 0.0)) throw std::invalid_argument("entropy_refine: eta must be positive");
  if (!(p > 1.0)) throw std::invalid_argument("entropy_refine: need p > 1");
  if (!(r >= p) || !std::isfinite(r)) throw std::invalid_argument("entropy_refine: need p <= r < inf");
  if (f.is_zero()) throw std::invalid_argument("entropy_refine: f must not vanish identically");
  const RoughDecomposition dec = rough_decompose(f);
  std::set<int> keep;
  for (const auto& level : dec.levels())
    if (dec.score(level, p) > eta) keep.insert(level.j);
  return {dec.reconstruct(keep), std::move(keep)};
}

GridFunction trim_small_levels(const GridFunction& f, double eta, double p) {
  if (!(eta > 0.0)) throw std::invalid_argument("trim_small_levels: eta must be positive");
  if (f.is_zero()) throw std::invalid_argument("trim_small_levels: f must not vanish identically");
  const double threshold = eta * lp_norm(f, p);
  const RoughDecomposition dec = rough_decompose(f);
  std::set<int> small;
  for (const auto& level : dec.levels())
    if (dec.score(level, p) < threshold) small.insert(level.j);
  return dec.reconstruct(small);
}

}  // namespace pararadon
