#include "pararadon/spectral.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace pararadon {

namespace {

using Complex = std::complex<double>;

double bump_g(double s) { return s > 0 ? std::exp(-1.0 / s) : 0.0; }

// In-place transform along every axis of a row-major array.
void fft_all_axes(const GridSpec& spec, std::vector<Complex>& data, bool inverse) {
  Eigen::FFT<double> fft;
  for (int axis = 0; axis < spec.dim(); ++axis) {
    const Index n = spec.count(axis);
    const Index stride = spec.stride(axis);
    const Index lines = spec.size() / n;
    std::vector<Complex> in(static_cast<std::size_t>(n)), out;
    for (Index line = 0; line < lines; ++line) {
      // base offset: decompose the line index around the skipped axis
      const Index outer = line / stride, inner = line % stride;
      const Index base = outer * stride * n + inner;
      for (Index k = 0; k < n; ++k) in[static_cast<std::size_t>(k)] = data[static_cast<std::size_t>(base + k * stride)];
      if (inverse)
        fft.inv(out, in);
      else
        fft.fwd(out, in);
      for (Index k = 0; k < n; ++k) data[static_cast<std::size_t>(base + k * stride)] = out[static_cast<std::size_t>(k)];
    }
  }
}

std::vector<Complex> forward(const GridFunction& g) {
  std::vector<Complex> data(static_cast<std::size_t>(g.size()));
  for (Index i = 0; i < g.size(); ++i) data[static_cast<std::size_t>(i)] = g[i];
  fft_all_axes(g.spec(), data, false);
  return data;
}

}  // namespace

double zeta(double xi_norm) {
  if (xi_norm <= 2.0) return 1.0;
  if (xi_norm >= 4.0) return 0.0;
  const double s = (xi_norm - 2.0) / 2.0;
  return 1.0 - bump_g(s) / (bump_g(s) + bump_g(1.0 - s));
}

FrequencySplit frequency_split(const GridFunction& g, double rho) {
  if (!(rho >= 1.0)) throw std::invalid_argument("frequency_split: rho must be at least 1");
  const GridSpec& spec = g.spec();
  const int d = spec.dim();
  std::vector<Complex> data = forward(g);
  for (Index i = 0; i < spec.size(); ++i) {
    const auto k = spec.unravel(i);
    double xi2 = 0;
    for (int a = 0; a < d; ++a) {
      const Index n = spec.count(a);
      const Index ks = k[static_cast<std::size_t>(a)] <= n / 2 ? k[static_cast<std::size_t>(a)] : k[static_cast<std::size_t>(a)] - n;
      const double xi = 2.0 * std::numbers::pi * static_cast<double>(ks) / spec.width(a);
      xi2 += xi * xi;
    }
    data[static_cast<std::size_t>(i)] *= 1.0 - zeta(std::sqrt(xi2) / rho);
  }
  fft_all_axes(spec, data, true);
  FrequencySplit out{spec, Eigen::ArrayXd(spec.size()), Eigen::ArrayXd(spec.size())};
  for (Index i = 0; i < spec.size(); ++i) {
    out.flat[i] = data[static_cast<std::size_t>(i)].real();
    out.sharp[i] = g[i] - out.flat[i];
  }
  return out;
}

double signed_lp_norm(const GridSpec& spec, const Eigen::ArrayXd& values, double p) {
  if (!(p >= 1)) throw std::invalid_argument("signed_lp_norm: p must be at least 1");
  return std::pow(values.abs().pow(p).sum() * spec.cell_volume(), 1.0 / p);
}

double spectral_energy(const GridFunction& g) {
  const std::vector<Complex> data = forward(g);
  double s = 0;
  for (const Complex& c : data) s += std::norm(c);
  return s / static_cast<double>(g.size()) * g.spec().cell_volume();
}

}  // namespace pararadon
