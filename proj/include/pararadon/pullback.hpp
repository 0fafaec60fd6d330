#pragma once

#include "pararadon/grid.hpp"
#include "pararadon/symmetry.hpp"

namespace pararadon {

/// phi^* f(x) = f(phi(x)) J_phi^{d/(d+1)}, sampled on `out` by multilinear
/// interpolation of f. Preserves the L^{(d+1)/d} norm up to quadrature error.
GridFunction pullback(const GroupElementd& phi, const GridFunction& f, const GridSpec& out);

/// psi^* f(x) = f(psi(x)) J_psi^{d/(d+1)} for the partner psi of phi. For the
/// convolution T f = f * sigma this is the action that commutes with T:
/// T(psi^* f) = |t| J_psi^{-1/(d+1)} (T f) o phi.
GridFunction partner_pullback(const GroupElementd& phi, const GridFunction& f, const GridSpec& out);

/// Axis-aligned box containing phi^{-1}([lo, hi]), estimated from a lattice
/// of samples and padded by `pad` times its width on every side.
std::pair<Vec, Vec> preimage_bounds(const GroupElementd& phi, const Vec& lo, const Vec& hi, double pad = 0.05);
std::pair<Vec, Vec> partner_preimage_bounds(const GroupElementd& phi, const Vec& lo, const Vec& hi,
                                            double pad = 0.05);

}  // namespace pararadon
