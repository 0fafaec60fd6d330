#pragma once

#include "pararadon/symmetry.hpp"

#include <Eigen/Eigenvalues>

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pararadon {

/// A paraball B(z, e, r, rho) with z = (base, apex) on the incidence manifold:
///
///   sum_j r_j^{-2} <x' - base', e_j>^2 < 1,
///   | x_d - apex_d - s |x' - apex'|^2 | < rho.
///
/// s = +1 for primal balls. Dual balls are stored with s = -1, radii rho/r_j
/// and the roles of base and apex exchanged, so that one type serves both.
/// The incidence constraint reads base_d - apex_d = s |base' - apex'|^2.
template <typename Scalar>
class Paraball {
 public:
  using VectorType = VectorX<Scalar>;
  using MatrixType = MatrixX<Scalar>;

  /// `basis` holds e_1..e_{d-1} as columns.
  Paraball(VectorType base, VectorType apex, MatrixType basis, VectorType radii, Scalar rho, int sign = 1)
      : base_(std::move(base)), apex_(std::move(apex)), basis_(std::move(basis)), radii_(std::move(radii)),
        rho_(rho), sign_(sign) {
    const Eigen::Index m = basis_.rows();
    if (m < 1 || basis_.cols() != m || radii_.size() != m || base_.size() != m + 1 || apex_.size() != m + 1)
      throw std::invalid_argument("Paraball: inconsistent shapes");
    if (sign_ != 1 && sign_ != -1) throw std::invalid_argument("Paraball: sign must be +1 or -1");
    if (!(rho_ > Scalar(0)) || !(radii_.array() > Scalar(0)).all())
      throw std::invalid_argument("Paraball: radii and thickness must be positive");
    const Scalar ortho = (basis_.transpose() * basis_ - MatrixType::Identity(m, m)).cwiseAbs().maxCoeff();
    if (ortho > Scalar(1e-12)) throw std::invalid_argument("Paraball: basis is not orthonormal");
    const Scalar scale = Scalar(1) + base_.squaredNorm() + apex_.squaredNorm();
    if (std::abs(incidence()) > Scalar(1e-8) * scale)
      throw std::invalid_argument("Paraball: (base, apex) is not on the incidence manifold");
  }

  /// Primal ball with the apex given by its primed offset from the base.
  static Paraball from_offset(const VectorType& base, const VectorType& apex_offset, const MatrixType& basis,
                              const VectorType& radii, Scalar rho) {
    const Eigen::Index m = base.size() - 1;
    VectorType apex(m + 1);
    apex.head(m) = base.head(m) + apex_offset;
    apex(m) = base(m) - apex_offset.squaredNorm();
    return Paraball(base, apex, basis, radii, rho, 1);
  }

  /// base = apex = 0, standard basis, unit radii and thickness.
  static Paraball unit(int d) {
    const Eigen::Index m = d - 1;
    return Paraball(VectorType::Zero(d), VectorType::Zero(d), MatrixType::Identity(m, m), VectorType::Ones(m),
                    Scalar(1), 1);
  }

  int dim() const { return static_cast<int>(base_.size()); }
  const VectorType& base() const { return base_; }
  const VectorType& apex() const { return apex_; }
  const MatrixType& basis() const { return basis_; }
  const VectorType& radii() const { return radii_; }
  Scalar rho() const { return rho_; }
  int sign() const { return sign_; }

  /// base_d - apex_d - s |base' - apex'|^2; zero for a valid ball.
  Scalar incidence() const {
    const Eigen::Index m = basis_.rows();
    return base_(m) - apex_(m) - Scalar(sign_) * (base_.head(m) - apex_.head(m)).squaredNorm();
  }

  /// sum_j r_j^{-2} <v, e_j>^2.
  template <typename Derived>
  Scalar ellipsoid_norm2(const Eigen::MatrixBase<Derived>& v) const {
    return (basis_.transpose() * v).cwiseQuotient(radii_).squaredNorm();
  }

  /// x_d - apex_d - s |x' - apex'|^2.
  template <typename Derived>
  Scalar slab(const Eigen::MatrixBase<Derived>& x) const {
    const Eigen::Index m = basis_.rows();
    return x(m) - apex_(m) - Scalar(sign_) * (x.head(m) - apex_.head(m)).squaredNorm();
  }

  template <typename Derived>
  bool contains(const Eigen::MatrixBase<Derived>& x) const {
    const Eigen::Index m = basis_.rows();
    return ellipsoid_norm2(x.head(m) - base_.head(m)) < Scalar(1) && std::abs(slab(x)) < rho_;
  }

  /// Membership in the expanded ball lambda B (lambda >= 1).
  template <typename Derived>
  bool expanded_contains(Scalar lambda, const Eigen::MatrixBase<Derived>& x) const {
    if (!(lambda >= Scalar(1))) throw std::invalid_argument("expanded_contains: need lambda >= 1");
    const Eigen::Index m = basis_.rows();
    return ellipsoid_norm2(x.head(m) - base_.head(m)) < lambda * lambda && std::abs(slab(x)) < lambda * rho_;
  }

  /// 2 rho omega_{d-1} prod r_j.
  Scalar volume() const {
    const Scalar m = static_cast<Scalar>(basis_.rows());
    const Scalar omega = std::pow(std::numbers::pi_v<Scalar>, m / 2) / std::tgamma(m / 2 + 1);
    return Scalar(2) * rho_ * omega * radii_.prod();
  }

  /// Quadratic form M = E diag(r^{-2}) E^T of the cross-section.
  MatrixType shape() const { return basis_ * radii_.array().inverse().square().matrix().asDiagonal() * basis_.transpose(); }

  /// Dual ball: radii rho/r_j, base and apex exchanged, orientation flipped.
  /// dual(dual(B)) == B exactly.
  Paraball dual() const {
    return Paraball(apex_, base_, basis_, (VectorType::Constant(radii_.size(), rho_).array() / radii_.array()).matrix(),
                    rho_, -sign_);
  }

 private:
  VectorType base_, apex_;
  MatrixType basis_;
  VectorType radii_;
  Scalar rho_;
  int sign_;
};

using Paraballd = Paraball<double>;

namespace detail {

/// sup over v in C(outer) of the ellipsoid norm of `inner`:
/// the top eigenvalue of S^T S with S_kj = (r^outer_j / r^inner_k) <e^inner_k, e^outer_j>.
template <typename Scalar>
Scalar ellipsoid_sup(const Paraball<Scalar>& outer, const Paraball<Scalar>& inner) {
  // a shared basis is orthonormal, so S is diagonal; skip the rounding of E^T E
  if (outer.basis() == inner.basis()) return outer.radii().cwiseQuotient(inner.radii()).cwiseAbs2().maxCoeff();
  MatrixX<Scalar> S = inner.basis().transpose() * outer.basis();
  S = inner.radii().array().inverse().matrix().asDiagonal() * S * outer.radii().asDiagonal();
  Eigen::SelfAdjointEigenSolver<MatrixX<Scalar>> es(S.transpose() * S, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

template <typename Scalar>
Scalar offset_term(const Paraball<Scalar>& ball, const VectorX<Scalar>& diff) {
  return (ball.basis().transpose() * diff).cwiseQuotient(ball.radii()).squaredNorm();
}

}  // namespace detail

/// The nine terms of the quasidistance, in the order
/// rho ratio, two ellipsoid sups, two base offsets, two apex offsets,
/// two incidence mismatches.
template <typename Scalar>
std::array<Scalar, 9> quasidistance_terms(const Paraball<Scalar>& bs, const Paraball<Scalar>& bf) {
  if (bs.sign() != bf.sign()) throw std::domain_error("quasidistance: orientations differ");
  if (bs.dim() != bf.dim()) throw std::invalid_argument("quasidistance: dimensions differ");
  const Eigen::Index m = bs.basis().rows();
  std::array<Scalar, 9> t{};
  t[0] = std::max(bs.rho(), bf.rho()) / std::min(bs.rho(), bf.rho());
  t[1] = detail::ellipsoid_sup(bs, bf);
  t[2] = detail::ellipsoid_sup(bf, bs);
  const VectorX<Scalar> db = bs.base().head(m) - bf.base().head(m);
  t[3] = detail::offset_term(bs, db);
  t[4] = detail::offset_term(bf, db);
  // apex offsets measured against the dual radii rho/r_j
  const VectorX<Scalar> da = bs.apex().head(m) - bf.apex().head(m);
  t[5] = (bs.basis().transpose() * da).cwiseProduct(bs.radii()).squaredNorm() / (bs.rho() * bs.rho());
  t[6] = (bf.basis().transpose() * da).cwiseProduct(bf.radii()).squaredNorm() / (bf.rho() * bf.rho());
  const Scalar s = Scalar(bs.sign());
  const VectorX<Scalar> x1 = bf.base().head(m) - bs.apex().head(m);
  const VectorX<Scalar> x2 = bs.base().head(m) - bf.apex().head(m);
  t[7] = std::abs(bf.base()(m) - bs.apex()(m) - s * x1.squaredNorm()) / bs.rho();
  t[8] = std::abs(bs.base()(m) - bf.apex()(m) - s * x2.squaredNorm()) / bf.rho();
  return t;
}

/// Quasidistance between two paraballs of equal orientation. Paired terms
/// are added first so the value is bitwise symmetric in its arguments.
template <typename Scalar>
Scalar quasidistance(const Paraball<Scalar>& bs, const Paraball<Scalar>& bf) {
  const auto t = quasidistance_terms(bs, bf);
  return t[0] + (t[1] + t[2]) + (t[3] + t[4]) + (t[5] + t[6]) + (t[7] + t[8]);
}

/// The preimage {x : phi(x) in B}. For a dual ball (s = -1) this is the
/// preimage under the partner psi, i.e. the dual of the transformed primal.
template <typename Scalar>
Paraball<Scalar> transform_paraball(const GroupElement<Scalar>& phi, const Paraball<Scalar>& ball) {
  if (ball.sign() < 0) return transform_paraball(phi, ball.dual()).dual();
  if (phi.dim() != ball.dim()) throw std::invalid_argument("transform_paraball: dimension mismatch");
  const GroupElement<Scalar> inv = inverse(phi);
  const MatrixX<Scalar> M = phi.L().transpose() * ball.shape() * phi.L();
  Eigen::SelfAdjointEigenSolver<MatrixX<Scalar>> es(Scalar(0.5) * (M + M.transpose()));
  const VectorX<Scalar> radii = es.eigenvalues().array().rsqrt().matrix();
  const VectorX<Scalar> base = inv.apply(ball.base());
  const VectorX<Scalar> apex = inv.apply_partner(ball.apex());
  return Paraball<Scalar>(base, apex, es.eigenvectors(), radii, ball.rho() / std::abs(phi.t()), 1);
}

}  // namespace pararadon
