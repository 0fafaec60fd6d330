#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

namespace pararadon {

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Incidence form Theta(x, y) = x_d - y_d - |x' - y'|^2.
template <typename DerivedX, typename DerivedY>
typename DerivedX::Scalar theta(const Eigen::MatrixBase<DerivedX>& x, const Eigen::MatrixBase<DerivedY>& y) {
  const Eigen::Index m = x.size() - 1;
  return x(m) - y(m) - (x.head(m) - y.head(m)).squaredNorm();
}

/// An element phi of the symmetry group, parametrized by (L, u, t, a, v):
///
///   phi(x', x_d) = (L x' + u, t x_d + a + v.x' + Q(x')),  Q(x') = |Lx'|^2 - t|x'|^2.
///
/// Its partner psi, with Theta(phi x, psi y) = t Theta(x, y), is
///
///   psi(y', y_d) = (Lp y' + up, t y_d + ap + vp.y' + Qp(y')),
///   Lp = t L^{-T},  up = u - L^{-T} v / 2,  vp = t L^{-1} L^{-T} v,
///   ap = a - |u - up|^2,  Qp(y') = t|y'|^2 - |Lp y'|^2.
///
/// The partner is derived, never stored independently.
template <typename Scalar>
class GroupElement {
 public:
  using VectorType = VectorX<Scalar>;
  using MatrixType = MatrixX<Scalar>;

  GroupElement(MatrixType L, VectorType u, Scalar t, Scalar a, VectorType v)
      : L_(std::move(L)), u_(std::move(u)), v_(std::move(v)), t_(t), a_(a) {
    const Eigen::Index m = L_.rows();
    if (m < 1 || L_.cols() != m || u_.size() != m || v_.size() != m)
      throw std::invalid_argument("GroupElement: inconsistent parameter shapes");
    if (t_ == Scalar(0)) throw std::invalid_argument("GroupElement: t must be nonzero");
    Eigen::FullPivLU<MatrixType> lu(L_);
    if (!lu.isInvertible()) throw std::invalid_argument("GroupElement: L is singular");
    L_inv_ = lu.inverse();
    det_L_ = L_.determinant();
    const MatrixType L_inv_t = L_inv_.transpose();
    Lp_ = t_ * L_inv_t;
    up_ = u_ - Scalar(0.5) * (L_inv_t * v_);
    vp_ = t_ * (L_inv_ * (L_inv_t * v_));
    ap_ = a_ - (u_ - up_).squaredNorm();
  }

  static GroupElement identity(int d) {
    const Eigen::Index m = d - 1;
    return GroupElement(MatrixType::Identity(m, m), VectorType::Zero(m), Scalar(1), Scalar(0), VectorType::Zero(m));
  }
  /// x -> x + w; the partner is the same translation.
  static GroupElement translation(const VectorType& w) {
    const Eigen::Index m = w.size() - 1;
    return GroupElement(MatrixType::Identity(m, m), w.head(m), Scalar(1), w(m), VectorType::Zero(m));
  }
  /// (x', x_d) -> (r x', r^2 x_d); the partner is the same scaling.
  static GroupElement scaling(int d, Scalar r) {
    const Eigen::Index m = d - 1;
    return GroupElement(r * MatrixType::Identity(m, m), VectorType::Zero(m), r * r, Scalar(0), VectorType::Zero(m));
  }
  /// (x', x_d) -> (x' + u0, x_d + 2 u0.x' + |u0|^2); partner (y', y_d + 2 u0.y').
  static GroupElement galilean(const VectorType& u0) {
    const Eigen::Index m = u0.size();
    return GroupElement(MatrixType::Identity(m, m), u0, Scalar(1), u0.squaredNorm(), Scalar(2) * u0);
  }
  /// (x', x_d) -> (L x', x_d + |Lx'|^2 - |x'|^2); partner uses L^{-T}.
  static GroupElement linear(const MatrixType& L) {
    const Eigen::Index m = L.rows();
    return GroupElement(L, VectorType::Zero(m), Scalar(1), Scalar(0), VectorType::Zero(m));
  }

  int dim() const { return static_cast<int>(L_.rows()) + 1; }

  const MatrixType& L() const { return L_; }
  const VectorType& u() const { return u_; }
  const VectorType& v() const { return v_; }
  Scalar t() const { return t_; }
  Scalar a() const { return a_; }

  const MatrixType& partner_L() const { return Lp_; }
  const VectorType& partner_u() const { return up_; }
  const VectorType& partner_v() const { return vp_; }
  Scalar partner_a() const { return ap_; }

  /// The lambda of Theta(phi x, psi y) = lambda Theta(x, y).
  Scalar incidence_factor() const { return t_; }
  /// Constant Jacobian determinant |det L| |t| of phi.
  Scalar jacobian() const { return std::abs(det_L_) * std::abs(t_); }
  /// |det Lp| |t| = |t|^d / |det L|.
  Scalar partner_jacobian() const { return std::abs(Lp_.determinant()) * std::abs(t_); }

  template <typename Derived>
  Scalar Q(const Eigen::MatrixBase<Derived>& xp) const {
    return (L_ * xp).squaredNorm() - t_ * xp.squaredNorm();
  }
  template <typename Derived>
  Scalar partner_Q(const Eigen::MatrixBase<Derived>& yp) const {
    return t_ * yp.squaredNorm() - (Lp_ * yp).squaredNorm();
  }

  template <typename Derived>
  VectorType apply(const Eigen::MatrixBase<Derived>& x) const {
    const Eigen::Index m = L_.rows();
    if (x.size() != m + 1) throw std::invalid_argument("GroupElement::apply: dimension mismatch");
    VectorType out(m + 1);
    const auto xp = x.head(m);
    out.head(m) = L_ * xp + u_;
    out(m) = t_ * x(m) + a_ + v_.dot(xp) + Q(xp);
    return out;
  }

  template <typename Derived>
  VectorType apply_partner(const Eigen::MatrixBase<Derived>& y) const {
    const Eigen::Index m = L_.rows();
    if (y.size() != m + 1) throw std::invalid_argument("GroupElement::apply_partner: dimension mismatch");
    VectorType out(m + 1);
    const auto yp = y.head(m);
    out.head(m) = Lp_ * yp + up_;
    out(m) = t_ * y(m) + ap_ + vp_.dot(yp) + partner_Q(yp);
    return out;
  }

  /// Max over entries of |Lp^T L - t I|.
  Scalar partner_consistency() const {
    const Eigen::Index m = L_.rows();
    return (Lp_.transpose() * L_ - t_ * MatrixType::Identity(m, m)).cwiseAbs().maxCoeff();
  }

 private:
  MatrixType L_, L_inv_, Lp_;
  VectorType u_, v_, up_, vp_;
  Scalar t_, a_, ap_;
  Scalar det_L_;
};

using GroupElementd = GroupElement<double>;

/// Theta(phi x, psi y) - lambda Theta(x, y).
template <typename Scalar, typename DerivedX, typename DerivedY>
Scalar incidence_defect(const GroupElement<Scalar>& phi, const Eigen::MatrixBase<DerivedX>& x,
                        const Eigen::MatrixBase<DerivedY>& y) {
  return theta(phi.apply(x), phi.apply_partner(y)) - phi.incidence_factor() * theta(x, y);
}

/// Largest |incidence_defect| / (1 + |Theta(x,y)|) over random point pairs.
template <typename Scalar>
Scalar max_incidence_defect(const GroupElement<Scalar>& phi, int pairs, std::uint64_t seed, Scalar spread = 2) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  const int d = phi.dim();
  Scalar worst = 0;
  for (int k = 0; k < pairs; ++k) {
    VectorX<Scalar> x(d), y(d);
    for (int i = 0; i < d; ++i) {
      x(i) = spread * Scalar(unif(rng));
      y(i) = spread * Scalar(unif(rng));
    }
    const Scalar th = theta(x, y);
    worst = std::max<Scalar>(worst, std::abs(incidence_defect(phi, x, y)) / (Scalar(1) + std::abs(th)));
  }
  return worst;
}

/// Builds an element and optionally verifies the incidence identity on
/// random pairs (throws std::logic_error if it fails).
template <typename Scalar>
GroupElement<Scalar> make_element(const MatrixX<Scalar>& L, const VectorX<Scalar>& u, Scalar t, Scalar a,
                                  const VectorX<Scalar>& v, bool self_check = false) {
  GroupElement<Scalar> phi(L, u, t, a, v);
  if (self_check && max_incidence_defect(phi, 100, 0x5eed) > Scalar(1e-9))
    throw std::logic_error("make_element: incidence identity violated");
  return phi;
}

/// phi2 o phi1 in canonical parameters.
template <typename Scalar>
GroupElement<Scalar> compose(const GroupElement<Scalar>& phi2, const GroupElement<Scalar>& phi1) {
  using M = MatrixX<Scalar>;
  const Eigen::Index m = phi1.L().rows();
  if (phi2.L().rows() != m) throw std::invalid_argument("compose: dimension mismatch");
  const M& L1 = phi1.L();
  const M& L2 = phi2.L();
  const auto& u1 = phi1.u();
  const Scalar t2 = phi2.t();
  const M G = L2.transpose() * L2 - t2 * M::Identity(m, m);
  VectorX<Scalar> v = t2 * phi1.v() + L1.transpose() * phi2.v() + Scalar(2) * (L1.transpose() * (G * u1));
  const Scalar a = t2 * phi1.a() + phi2.a() + phi2.v().dot(u1) + (L2 * u1).squaredNorm() - t2 * u1.squaredNorm();
  return GroupElement<Scalar>(L2 * L1, L2 * u1 + phi2.u(), t2 * phi1.t(), a, v);
}

template <typename Scalar>
GroupElement<Scalar> inverse(const GroupElement<Scalar>& phi) {
  using M = MatrixX<Scalar>;
  const Eigen::Index m = phi.L().rows();
  const M Li = phi.L().inverse();
  const Scalar ti = Scalar(1) / phi.t();
  const VectorX<Scalar> ui = -(Li * phi.u());
  const M G = Li.transpose() * Li - ti * M::Identity(m, m);
  const VectorX<Scalar> vi = -(Li.transpose() * (ti * phi.v())) - Scalar(2) * (G * phi.u());
  const Scalar ai =
      -(ti * phi.a() + vi.dot(phi.u()) + (Li * phi.u()).squaredNorm() - ti * phi.u().squaredNorm());
  return GroupElement<Scalar>(Li, ui, ti, ai, vi);
}

namespace detail {
template <typename Scalar>
MatrixX<Scalar> position_matrix(const std::vector<VectorX<Scalar>>& pts) {
  const auto d = static_cast<Eigen::Index>(pts.size());
  MatrixX<Scalar> X(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    if (pts[static_cast<std::size_t>(j)].size() != d)
      throw std::invalid_argument("general_position: need exactly d points in R^d");
    X.row(j).head(d - 1) = pts[static_cast<std::size_t>(j)].head(d - 1).transpose();
    X(j, d - 1) = Scalar(1);
  }
  return X;
}
}  // namespace detail

/// d points are in general position when the matrix with rows (x_j', 1) is
/// nonsingular: |det| > 1e-10 (max row norm)^d.
template <typename Scalar>
bool general_position(const std::vector<VectorX<Scalar>>& pts) {
  if (pts.size() < 2) throw std::invalid_argument("general_position: need exactly d >= 2 points");
  const MatrixX<Scalar> X = detail::position_matrix(pts);
  const Scalar scale = X.rowwise().norm().maxCoeff();
  return std::abs(X.determinant()) > Scalar(1e-10) * std::pow(scale, static_cast<Scalar>(X.rows()));
}

/// The element with phi(xs[j]) = ys[j] and vertical factor t: the affine
/// part maps the primed coordinates, then (v, a) solve a d x d system.
template <typename Scalar>
GroupElement<Scalar> interpolate_points(const std::vector<VectorX<Scalar>>& xs, const std::vector<VectorX<Scalar>>& ys,
                                        Scalar t) {
  if (xs.size() != ys.size()) throw std::invalid_argument("interpolate_points: point counts differ");
  if (t == Scalar(0)) throw std::invalid_argument("interpolate_points: t must be nonzero");
  const auto d = static_cast<Eigen::Index>(xs.size());
  const Eigen::Index m = d - 1;
  if (!general_position(xs) || !general_position(ys))
    throw std::domain_error("interpolate_points: singular system (points not in general position)");
  const MatrixX<Scalar> X = detail::position_matrix(xs);
  MatrixX<Scalar> Y(d, m);
  for (Eigen::Index j = 0; j < d; ++j) Y.row(j) = ys[static_cast<std::size_t>(j)].head(m).transpose();
  Eigen::FullPivLU<MatrixX<Scalar>> lu(X);
  const MatrixX<Scalar> Z = lu.solve(Y);
  const MatrixX<Scalar> L = Z.topRows(m).transpose();
  const VectorX<Scalar> u = Z.row(m).transpose();
  VectorX<Scalar> rhs(d);
  for (Eigen::Index j = 0; j < d; ++j) {
    const auto& x = xs[static_cast<std::size_t>(j)];
    const auto& y = ys[static_cast<std::size_t>(j)];
    rhs(j) = y(m) - (L * x.head(m)).squaredNorm() - t * (x(m) - x.head(m).squaredNorm());
  }
  const VectorX<Scalar> va = lu.solve(rhs);
  return GroupElement<Scalar>(L, u, t, va(m), va.head(m));
}

}  // namespace pararadon
