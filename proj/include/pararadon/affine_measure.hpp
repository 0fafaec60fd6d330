#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace pararadon {

template <typename S>
using ChartVector = Eigen::Matrix<S, Eigen::Dynamic, 1>;
template <typename S>
using ChartMatrix = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

/// A curve gamma: [lo, hi] -> R^d. The evaluator returns gamma and its
/// derivatives of orders 1..d.
template <typename Scalar>
class CurveChart {
 public:
  using Vector = ChartVector<Scalar>;
  using Jet = std::vector<Vector>;
  using Eval = std::function<Jet(Scalar)>;

  CurveChart(int dim, Scalar lo, Scalar hi, Eval eval) : dim_(dim), lo_(lo), hi_(hi), eval_(std::move(eval)) {
    if (dim_ < 2) throw std::invalid_argument("CurveChart: ambient dimension must be at least 2");
    if (!(lo_ < hi_)) throw std::invalid_argument("CurveChart: empty parameter interval");
  }

  /// Central differences of a plain evaluator. Orders up to 2 use the step
  /// h = rel_step * width; order k > 2 uses h^{2/k} to balance rounding.
  static CurveChart finite_difference(int dim, Scalar lo, Scalar hi, std::function<Vector(Scalar)> gamma,
                                      Scalar rel_step = Scalar(1e-4)) {
    const Scalar h = rel_step * (hi - lo);
    return CurveChart(dim, lo, hi, [dim, h, gamma](Scalar t) {
      Jet jet{gamma(t)};
      for (int k = 1; k <= dim; ++k) {
        const Scalar hk = k <= 2 ? h : std::pow(h, Scalar(2) / k);
        Vector acc = Vector::Zero(dim);
        Scalar binom = 1;
        for (int i = 0; i <= k; ++i) {
          const Scalar sign = (i % 2 == 0) ? Scalar(1) : Scalar(-1);
          acc += sign * binom * gamma(t + (Scalar(k) / 2 - i) * hk);
          binom = binom * Scalar(k - i) / Scalar(i + 1);
        }
        jet.push_back(acc / std::pow(hk, Scalar(k)));
      }
      return jet;
    });
  }

  int dim() const { return dim_; }
  Scalar lo() const { return lo_; }
  Scalar hi() const { return hi_; }
  bool contains(Scalar t) const { return t >= lo_ && t <= hi_; }

  Jet jet(Scalar t) const {
    Jet j = eval_(t);
    if (static_cast<int>(j.size()) < dim_ + 1) throw std::runtime_error("CurveChart: evaluator returned too few derivatives");
    for (const Vector& v : j)
      if (v.size() != dim_ || !v.allFinite()) throw std::runtime_error("CurveChart: non-finite or misshapen derivative");
    return j;
  }

 private:
  int dim_;
  Scalar lo_, hi_;
  Eval eval_;
};

/// Value, Jacobian (d x (d-1)) and second partials of a hypersurface chart.
template <typename Scalar>
struct SurfaceJet {
  ChartVector<Scalar> value;
  ChartMatrix<Scalar> jacobian;
  std::vector<ChartVector<Scalar>> second;  ///< index i * m + j

  const ChartVector<Scalar>& partial2(int i, int j) const {
    return second[static_cast<std::size_t>(i * jacobian.cols() + j)];
  }
};

/// A hypersurface F: U -> R^d on a box U in R^{d-1}.
template <typename Scalar>
class SurfaceChart {
 public:
  using Vector = ChartVector<Scalar>;
  using Jet = SurfaceJet<Scalar>;
  using Eval = std::function<Jet(const Vector&)>;

  SurfaceChart(int dim, Vector lo, Vector hi, Eval eval)
      : dim_(dim), lo_(std::move(lo)), hi_(std::move(hi)), eval_(std::move(eval)) {
    if (dim_ < 2) throw std::invalid_argument("SurfaceChart: ambient dimension must be at least 2");
    if (lo_.size() != dim_ - 1 || hi_.size() != dim_ - 1 || !(lo_.array() < hi_.array()).all())
      throw std::invalid_argument("SurfaceChart: bad parameter box");
  }

  /// Central differences, step rel_step times the box width per axis.
  static SurfaceChart finite_difference(int dim, const Vector& lo, const Vector& hi, std::function<Vector(const Vector&)> F,
                                        Scalar rel_step = Scalar(1e-4)) {
    const Vector h = rel_step * (hi - lo);
    const int m = dim - 1;
    return SurfaceChart(dim, lo, hi, [m, h, F](const Vector& u) {
      Jet jet;
      jet.value = F(u);
      jet.jacobian.resize(jet.value.size(), m);
      auto shifted = [&](int i, Scalar si, int j, Scalar sj) {
        Vector v = u;
        v[i] += si * h[i];
        v[j] += sj * h[j];
        return F(v);
      };
      for (int i = 0; i < m; ++i) jet.jacobian.col(i) = (shifted(i, 1, i, 0) - shifted(i, -1, i, 0)) / (2 * h[i]);
      jet.second.resize(static_cast<std::size_t>(m * m));
      for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) {
          Vector v;
          if (i == j)
            v = (shifted(i, 1, i, 0) - 2 * jet.value + shifted(i, -1, i, 0)) / (h[i] * h[i]);
          else
            v = (shifted(i, 1, j, 1) - shifted(i, 1, j, -1) - shifted(i, -1, j, 1) + shifted(i, -1, j, -1)) /
                (4 * h[i] * h[j]);
          jet.second[static_cast<std::size_t>(i * m + j)] = v;
          jet.second[static_cast<std::size_t>(j * m + i)] = v;
        }
      return jet;
    });
  }

  int dim() const { return dim_; }
  const Vector& lo() const { return lo_; }
  const Vector& hi() const { return hi_; }
  bool contains(const Vector& u) const { return (u.array() >= lo_.array()).all() && (u.array() <= hi_.array()).all(); }

  /// Evaluates and enforces mixed-partial symmetry.
  Jet jet(const Vector& u) const {
    Jet j = eval_(u);
    const int m = dim_ - 1;
    if (j.value.size() != dim_ || j.jacobian.rows() != dim_ || j.jacobian.cols() != m ||
        static_cast<int>(j.second.size()) != m * m)
      throw std::runtime_error("SurfaceChart: evaluator returned misshapen derivatives");
    for (int a = 0; a < m; ++a)
      for (int b = a + 1; b < m; ++b)
        if ((j.partial2(a, b) - j.partial2(b, a)).cwiseAbs().maxCoeff() > Scalar(1e-8))
          throw std::runtime_error("SurfaceChart: mixed partials are not symmetric");
    return j;
  }

 private:
  int dim_;
  Vector lo_, hi_;
  Eval eval_;
};

using CurveChartd = CurveChart<double>;
using SurfaceChartd = SurfaceChart<double>;

// ---------------------------------------------------------------- densities

/// |det(gamma', ..., gamma^(d))|^{2/(d(d+1))}
template <typename Scalar>
Scalar arclength_density(const CurveChart<Scalar>& c, Scalar t) {
  if (!c.contains(t)) throw std::domain_error("arclength_density: parameter outside the chart interval");
  const auto jet = c.jet(t);
  const int d = c.dim();
  ChartMatrix<Scalar> M(d, d);
  for (int k = 0; k < d; ++k) M.col(k) = jet[static_cast<std::size_t>(k + 1)];
  return std::pow(std::abs(M.determinant()), Scalar(2) / Scalar(d * (d + 1)));
}

/// The (d-1) x (d-1) matrix of bordered determinants det(DF | F_ij).
template <typename Scalar>
ChartMatrix<Scalar> bordered_determinants(const SurfaceJet<Scalar>& jet) {
  const auto d = jet.jacobian.rows();
  const auto m = jet.jacobian.cols();
  ChartMatrix<Scalar> B(d, d);
  B.leftCols(m) = jet.jacobian;
  ChartMatrix<Scalar> out(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j) {
      B.col(m) = jet.partial2(static_cast<int>(i), static_cast<int>(j));
      out(i, j) = B.determinant();
    }
  return out;
}

/// |det(F_ij)|^{1/(d+1)}
template <typename Scalar>
Scalar surface_density(const SurfaceChart<Scalar>& F, const ChartVector<Scalar>& u) {
  if (!F.contains(u)) throw std::domain_error("surface_density: parameter outside the chart box");
  return std::pow(std::abs(bordered_determinants(F.jet(u)).determinant()), Scalar(1) / Scalar(F.dim() + 1));
}

// ---------------------------------------------------------------- measures

/// Midpoint rule on [a, b] with n nodes.
template <typename Scalar>
Scalar measure(const CurveChart<Scalar>& c, Scalar a, Scalar b, int n = 4096) {
  if (a > b) std::swap(a, b);
  if (!c.contains(a) || !c.contains(b)) throw std::domain_error("measure: region escapes the chart interval");
  if (a == b) return Scalar(0);
  if (n < 1) throw std::invalid_argument("measure: need at least one node");
  const Scalar h = (b - a) / n;
  Scalar sum = 0;
  for (int k = 0; k < n; ++k) sum += arclength_density(c, a + (k + Scalar(0.5)) * h);
  return sum * h;
}

namespace detail {

// Midpoint rule over a box with n nodes per axis, fixed lexicographic order.
template <typename Scalar, typename Fn>
Scalar box_quadrature(const ChartVector<Scalar>& lo, const ChartVector<Scalar>& hi, int n, Fn&& fn) {
  const auto m = lo.size();
  if ((hi.array() == lo.array()).any()) return Scalar(0);
  if (n < 1) throw std::invalid_argument("measure: need at least one node per axis");
  const ChartVector<Scalar> h = (hi - lo) / Scalar(n);
  std::vector<int> idx(static_cast<std::size_t>(m), 0);
  Scalar sum = 0;
  ChartVector<Scalar> u(m);
  for (;;) {
    for (Eigen::Index a = 0; a < m; ++a) u[a] = lo[a] + (idx[static_cast<std::size_t>(a)] + Scalar(0.5)) * h[a];
    sum += fn(u);
    Eigen::Index a = m - 1;
    while (a >= 0 && ++idx[static_cast<std::size_t>(a)] == n) idx[static_cast<std::size_t>(a--)] = 0;
    if (a < 0) break;
  }
  return sum * h.prod();
}

}  // namespace detail

/// Midpoint rule over the box [lo, hi] with n nodes per axis.
template <typename Scalar>
Scalar measure(const SurfaceChart<Scalar>& F, const ChartVector<Scalar>& lo, const ChartVector<Scalar>& hi, int n = 256) {
  if (lo.size() != F.dim() - 1 || hi.size() != F.dim() - 1) throw std::invalid_argument("measure: region dimension");
  if (!(lo.array() <= hi.array()).all()) throw std::invalid_argument("measure: inverted region");
  if (!F.contains(lo) || !F.contains(hi)) throw std::domain_error("measure: region escapes the chart box");
  return detail::box_quadrature<Scalar>(lo, hi, n, [&](const ChartVector<Scalar>& u) { return surface_density(F, u); });
}

// ---------------------------------------------------------------- transformed charts

/// A o gamma, derivatives by applying A to each order.
template <typename Scalar>
CurveChart<Scalar> apply_linear(const ChartMatrix<Scalar>& A, const CurveChart<Scalar>& c) {
  return CurveChart<Scalar>(c.dim(), c.lo(), c.hi(), [A, c](Scalar t) {
    auto jet = c.jet(t);
    for (auto& v : jet) v = A * v;
    return jet;
  });
}

template <typename Scalar>
SurfaceChart<Scalar> apply_linear(const ChartMatrix<Scalar>& A, const SurfaceChart<Scalar>& F) {
  return SurfaceChart<Scalar>(F.dim(), F.lo(), F.hi(), [A, F](const ChartVector<Scalar>& u) {
    auto jet = F.jet(u);
    jet.value = A * jet.value;
    jet.jacobian = A * jet.jacobian;
    for (auto& v : jet.second) v = A * v;
    return jet;
  });
}

namespace detail {

template <typename Scalar>
void check_invertible(const ChartMatrix<Scalar>& A, int d) {
  if (A.rows() != d || A.cols() != d) throw std::invalid_argument("affine map has the wrong shape");
  if (!(std::abs(A.determinant()) > Scalar(1e-12) * std::pow(std::max(A.norm(), Scalar(1e-300)), Scalar(d))))
    throw std::invalid_argument("affine map is singular");
}

template <typename Scalar>
Scalar relative_defect(Scalar lhs, Scalar rhs) {
  const Scalar den = std::abs(rhs);
  return den > 0 ? std::abs(lhs - rhs) / den : std::abs(lhs - rhs);
}

}  // namespace detail

/// | sigma_{A o gamma}(I) - |det A|^{2/(d(d+1))} sigma_gamma(I) | / sigma_gamma(I)
template <typename Scalar>
Scalar affine_invariance_defect(const CurveChart<Scalar>& c, const ChartMatrix<Scalar>& A, Scalar a, Scalar b,
                                int n = 4096) {
  const int d = c.dim();
  detail::check_invertible(A, d);
  const Scalar base = measure(c, a, b, n);
  const Scalar lhs = measure(apply_linear(A, c), a, b, n);
  return detail::relative_defect(lhs, std::pow(std::abs(A.determinant()), Scalar(2) / Scalar(d * (d + 1))) * base);
}

/// Same with exponent (d-1)/(d+1) for hypersurfaces.
template <typename Scalar>
Scalar affine_invariance_defect(const SurfaceChart<Scalar>& F, const ChartMatrix<Scalar>& A, const ChartVector<Scalar>& lo,
                                const ChartVector<Scalar>& hi, int n = 256) {
  const int d = F.dim();
  detail::check_invertible(A, d);
  const Scalar base = measure(F, lo, hi, n);
  const Scalar lhs = measure(apply_linear(A, F), lo, hi, n);
  return detail::relative_defect(lhs, std::pow(std::abs(A.determinant()), Scalar(d - 1) / Scalar(d + 1)) * base);
}

// ---------------------------------------------------------------- reparametrizations

/// Scalar reparametrization phi with derivatives of orders 0..d.
template <typename Scalar>
using CurveReparam = std::function<std::vector<Scalar>(Scalar)>;

namespace detail {

// Partial Bell polynomials B_{n,k}(x_1, ..., x_{n-k+1}) for 0 <= k <= n <= N.
template <typename Scalar>
ChartMatrix<Scalar> bell_table(const std::vector<Scalar>& x, int N) {
  ChartMatrix<Scalar> B = ChartMatrix<Scalar>::Zero(N + 1, N + 1);
  B(0, 0) = 1;
  for (int n = 1; n <= N; ++n)
    for (int k = 1; k <= n; ++k) {
      Scalar s = 0, binom = 1;  // C(n-1, i-1)
      for (int i = 1; i <= n - k + 1; ++i) {
        s += binom * x[static_cast<std::size_t>(i)] * B(n - i, k - 1);
        binom = binom * Scalar(n - i) / Scalar(i);
      }
      B(n, k) = s;
    }
  return B;
}

}  // namespace detail

/// gamma o phi on [a, b], derivatives by Faa di Bruno.
template <typename Scalar>
CurveChart<Scalar> compose(const CurveChart<Scalar>& c, const CurveReparam<Scalar>& phi, Scalar a, Scalar b) {
  const int d = c.dim();
  return CurveChart<Scalar>(d, a, b, [c, phi, d](Scalar s) {
    const std::vector<Scalar> ph = phi(s);
    if (static_cast<int>(ph.size()) < d + 1) throw std::runtime_error("reparametrization: too few derivatives");
    if (!c.contains(ph[0])) throw std::domain_error("reparametrization leaves the chart interval");
    const auto g = c.jet(ph[0]);
    const ChartMatrix<Scalar> B = detail::bell_table(ph, d);
    typename CurveChart<Scalar>::Jet out{g[0]};
    for (int n = 1; n <= d; ++n) {
      ChartVector<Scalar> v = ChartVector<Scalar>::Zero(d);
      for (int k = 1; k <= n; ++k) v += B(n, k) * g[static_cast<std::size_t>(k)];
      out.push_back(v);
    }
    return out;
  });
}

/// | sigma_{gamma o phi}([a, b]) - sigma_gamma(phi([a, b])) | / sigma_gamma(phi([a, b])).
/// phi must be strictly monotone: a vanishing or sign-changing phi' on the
/// quadrature nodes is rejected.
template <typename Scalar>
Scalar reparam_invariance_defect(const CurveChart<Scalar>& c, const CurveReparam<Scalar>& phi, Scalar a, Scalar b,
                                 int n = 4096) {
  if (!(a < b)) throw std::invalid_argument("reparam_invariance_defect: empty region");
  const Scalar h = (b - a) / n;
  int sign = 0;
  for (int k = -1; k <= n; ++k) {
    // endpoints plus the quadrature nodes
    const Scalar s = k < 0 ? a : (k == n ? b : a + (k + Scalar(0.5)) * h);
    const Scalar dp = phi(s)[1];
    const int sg = dp > 0 ? 1 : (dp < 0 ? -1 : 0);
    if (sg == 0 || (sign != 0 && sg != sign)) throw std::domain_error("reparametrization is not injective");
    sign = sg;
  }
  const Scalar lhs = measure(compose(c, phi, a, b), a, b, n);
  const Scalar rhs = measure(c, phi(a)[0], phi(b)[0], n);
  return detail::relative_defect(lhs, rhs);
}

/// Reparametrization of a parameter box: value, Jacobian and per-component Hessians.
template <typename Scalar>
struct SurfaceReparamJet {
  ChartVector<Scalar> value;
  ChartMatrix<Scalar> jacobian;
  std::vector<ChartMatrix<Scalar>> hessians;
};

template <typename Scalar>
using SurfaceReparam = std::function<SurfaceReparamJet<Scalar>(const ChartVector<Scalar>&)>;

/// F o phi on the box [lo, hi], derivatives by the chain rule.
template <typename Scalar>
SurfaceChart<Scalar> compose(const SurfaceChart<Scalar>& F, const SurfaceReparam<Scalar>& phi, const ChartVector<Scalar>& lo,
                             const ChartVector<Scalar>& hi) {
  const int d = F.dim(), m = d - 1;
  return SurfaceChart<Scalar>(d, lo, hi, [F, phi, m](const ChartVector<Scalar>& s) {
    const SurfaceReparamJet<Scalar> p = phi(s);
    if (!F.contains(p.value)) throw std::domain_error("reparametrization leaves the chart box");
    const SurfaceJet<Scalar> g = F.jet(p.value);
    SurfaceJet<Scalar> out;
    out.value = g.value;
    out.jacobian = g.jacobian * p.jacobian;
    out.second.resize(static_cast<std::size_t>(m * m));
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        ChartVector<Scalar> v = ChartVector<Scalar>::Zero(g.value.size());
        for (int a = 0; a < m; ++a) {
          v += g.jacobian.col(a) * p.hessians[static_cast<std::size_t>(a)](i, j);
          for (int b = 0; b < m; ++b) v += g.partial2(a, b) * (p.jacobian(a, i) * p.jacobian(b, j));
        }
        out.second[static_cast<std::size_t>(i * m + j)] = v;
      }
    return out;
  });
}

/// | sigma_{F o phi}(V) - sigma_F(phi(V)) | / sigma_F(phi(V)), with the
/// right-hand side evaluated as the change-of-variables integral
/// int_V density_F(phi(s)) |det D phi(s)| ds. phi is rejected if det D phi
/// vanishes or changes sign on the quadrature nodes.
template <typename Scalar>
Scalar reparam_invariance_defect(const SurfaceChart<Scalar>& F, const SurfaceReparam<Scalar>& phi,
                                 const ChartVector<Scalar>& lo, const ChartVector<Scalar>& hi, int n = 256) {
  int sign = 0;
  const Scalar rhs = detail::box_quadrature<Scalar>(lo, hi, n, [&](const ChartVector<Scalar>& s) {
    const SurfaceReparamJet<Scalar> p = phi(s);
    const Scalar det = p.jacobian.determinant();
    const int sg = det > 0 ? 1 : (det < 0 ? -1 : 0);
    if (sg == 0 || (sign != 0 && sg != sign)) throw std::domain_error("reparametrization is not injective");
    sign = sg;
    return surface_density(F, p.value) * std::abs(det);
  });
  const Scalar lhs = measure(compose(F, phi, lo, hi), lo, hi, n);
  return detail::relative_defect(lhs, rhs);
}

// ---------------------------------------------------------------- chart library

/// (t, t^2) on [lo, hi].
template <typename Scalar = double>
CurveChart<Scalar> parabola_chart(Scalar lo = -10, Scalar hi = 10) {
  return CurveChart<Scalar>(2, lo, hi, [](Scalar t) {
    using V = ChartVector<Scalar>;
    return std::vector<V>{V{{t, t * t}}, V{{Scalar(1), 2 * t}}, V{{Scalar(0), Scalar(2)}}};
  });
}

/// (cos t, sin t) on [0, 2 pi].
template <typename Scalar = double>
CurveChart<Scalar> circle_chart() {
  return CurveChart<Scalar>(2, Scalar(0), 2 * std::numbers::pi_v<Scalar>, [](Scalar t) {
    using V = ChartVector<Scalar>;
    const Scalar c = std::cos(t), s = std::sin(t);
    return std::vector<V>{V{{c, s}}, V{{-s, c}}, V{{-c, -s}}};
  });
}

/// (t, t^2, ..., t^d).
template <typename Scalar = double>
CurveChart<Scalar> moment_curve_chart(int d, Scalar lo = -10, Scalar hi = 10) {
  return CurveChart<Scalar>(d, lo, hi, [d](Scalar t) {
    std::vector<ChartVector<Scalar>> jet;
    for (int k = 0; k <= d; ++k) {
      ChartVector<Scalar> v(d);
      for (int e = 1; e <= d; ++e) {
        // d^k/dt^k t^e = e!/(e-k)! t^{e-k}
        Scalar coef = e >= k ? 1 : 0;
        for (int q = 0; q < k && e >= k; ++q) coef *= Scalar(e - q);
        v[e - 1] = e >= k ? coef * std::pow(t, Scalar(e - k)) : Scalar(0);
      }
      jet.push_back(v);
    }
    return jet;
  });
}

/// (t, P(t)) with P(t) = sum_k coeffs[k] t^k.
template <typename Scalar = double>
CurveChart<Scalar> polynomial_graph_chart(std::vector<Scalar> coeffs, Scalar lo = -10, Scalar hi = 10) {
  if (coeffs.empty()) throw std::invalid_argument("polynomial_graph_chart: no coefficients");
  return CurveChart<Scalar>(2, lo, hi, [coeffs](Scalar t) {
    Scalar p[3] = {0, 0, 0};
    for (std::size_t k = coeffs.size(); k-- > 0;) {
      p[2] = p[2] * t + 2 * p[1];
      p[1] = p[1] * t + p[0];
      p[0] = p[0] * t + coeffs[k];
    }
    using V = ChartVector<Scalar>;
    return std::vector<V>{V{{t, p[0]}}, V{{Scalar(1), p[1]}}, V{{Scalar(0), p[2]}}};
  });
}

/// (u, |u|^2) over [-half_width, half_width]^{d-1}.
template <typename Scalar = double>
SurfaceChart<Scalar> paraboloid_chart(int d, Scalar half_width = 10) {
  const int m = d - 1;
  return SurfaceChart<Scalar>(
      d, ChartVector<Scalar>::Constant(m, -half_width), ChartVector<Scalar>::Constant(m, half_width),
      [d, m](const ChartVector<Scalar>& u) {
        SurfaceJet<Scalar> j;
        j.value.resize(d);
        j.value.head(m) = u;
        j.value[m] = u.squaredNorm();
        j.jacobian = ChartMatrix<Scalar>::Zero(d, m);
        j.jacobian.topRows(m).setIdentity();
        j.jacobian.row(m) = 2 * u.transpose();
        j.second.assign(static_cast<std::size_t>(m * m), ChartVector<Scalar>::Zero(d));
        for (int i = 0; i < m; ++i) j.second[static_cast<std::size_t>(i * m + i)][m] = 2;
        return j;
      });
}

/// Plain evaluators of the built-in charts, for finite-difference variants.
template <typename Scalar = double>
std::function<ChartVector<Scalar>(Scalar)> parabola_map() {
  return [](Scalar t) { return ChartVector<Scalar>{{t, t * t}}; };
}

template <typename Scalar = double>
std::function<ChartVector<Scalar>(const ChartVector<Scalar>&)> paraboloid_map(int d) {
  return [d](const ChartVector<Scalar>& u) {
    ChartVector<Scalar> x(d);
    x.head(d - 1) = u;
    x[d - 1] = u.squaredNorm();
    return x;
  };
}

}  // namespace pararadon
