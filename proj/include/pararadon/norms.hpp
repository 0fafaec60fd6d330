#pragma once

#include "pararadon/grid.hpp"

#include <functional>

namespace pararadon {

/// The scale-invariant exponent pair of the paraboloid inequality:
/// p = (d+1)/d on the input side, q = d+1 on the output side.
struct ExponentPair {
  int dim;
  double p;
  double q;

  explicit ExponentPair(int d);
};

/// Midpoint-rule L^p norm, (sum f^p * cellvol)^(1/p). Throws for p < 1.
double lp_norm(const GridFunction& f, double p);

/// sum f^p * cellvol (the p-th power of lp_norm without the root).
double lp_mass(const GridFunction& f, double p);

/// Quadrature of the integral of f^p over cells whose midpoint has |x| >= R.
double tail_mass(const GridFunction& f, double radius, double p);

/// sum psi(f) * cellvol. psi must vanish at 0.
double psi_integral(const GridFunction& f, const std::function<double(double)>& psi);

/// Euclidean grid L^2 norm (p = 2 without the exponent check).
double l2_norm(const GridFunction& f);

}  // namespace pararadon
