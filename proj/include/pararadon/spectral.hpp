#pragma once

#include "pararadon/grid.hpp"

namespace pararadon {

/// Radial cutoff: 1 on |xi| <= 2, 0 on |xi| >= 4, smooth in between.
double zeta(double xi_norm);

/// The two parts of a frequency split are signed, so they are kept as raw
/// sample arrays on the grid of g.
struct FrequencySplit {
  GridSpec spec;
  Eigen::ArrayXd sharp;  ///< g - flat
  Eigen::ArrayXd flat;   ///< multiplier 1 - zeta(xi / rho) applied to g
};

/// Periodic discrete Fourier split of g at scale rho >= 1; angular
/// frequencies 2 pi k / width per axis.
FrequencySplit frequency_split(const GridFunction& g, double rho);

/// (sum |v|^p cellvol)^{1/p} for a signed sample array.
double signed_lp_norm(const GridSpec& spec, const Eigen::ArrayXd& values, double p);

/// sum |ghat_k|^2 / N * cellvol; equals sum g^2 cellvol by Parseval.
double spectral_energy(const GridFunction& g);

}  // namespace pararadon
