#include "pararadon/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace pararadon {

GridSpec::GridSpec(Vec lo, Vec hi, std::vector<Index> counts)
    : lo_(std::move(lo)), hi_(std::move(hi)), counts_(std::move(counts)) {
  const auto d = static_cast<Index>(counts_.size());
  if (d < 2) throw std::invalid_argument("GridSpec: dimension must be at least 2");
  if (lo_.size() != d || hi_.size() != d)
    throw std::invalid_argument("GridSpec: bounds and counts disagree in dimension");
  strides_.assign(counts_.size(), 1);
  size_ = 1;
  cell_volume_ = 1.0;
  for (Index a = d - 1; a >= 0; --a) {
    if (!(lo_[a] < hi_[a]) || !std::isfinite(lo_[a]) || !std::isfinite(hi_[a]))
      throw std::invalid_argument("GridSpec: need lo < hi on axis " + std::to_string(a));
    if (counts_[static_cast<std::size_t>(a)] < 2)
      throw std::invalid_argument("GridSpec: need at least 2 cells on axis " + std::to_string(a));
    strides_[static_cast<std::size_t>(a)] = size_;
    size_ *= counts_[static_cast<std::size_t>(a)];
    cell_volume_ *= (hi_[a] - lo_[a]) / static_cast<double>(counts_[static_cast<std::size_t>(a)]);
  }
  if (!(cell_volume_ > 0.0)) throw std::invalid_argument("GridSpec: degenerate cell volume");
}

GridSpec GridSpec::centered_cube(int dim, double half_width, Index n) {
  return GridSpec(Vec::Constant(dim, -half_width), Vec::Constant(dim, half_width),
                  std::vector<Index>(static_cast<std::size_t>(dim), n));
}

double GridSpec::box_volume() const { return (hi_ - lo_).prod(); }

Vec GridSpec::midpoint(Index flat) const {
  Vec x(dim());
  for (int a = 0; a < dim(); ++a) {
    const Index i = (flat / stride(a)) % count(a);
    x[a] = midpoint_coord(a, i);
  }
  return x;
}

std::vector<Index> GridSpec::unravel(Index flat) const {
  std::vector<Index> m(counts_.size());
  for (int a = 0; a < dim(); ++a) m[static_cast<std::size_t>(a)] = (flat / stride(a)) % count(a);
  return m;
}

Index GridSpec::ravel(const std::vector<Index>& multi) const {
  Index flat = 0;
  for (int a = 0; a < dim(); ++a) flat += multi[static_cast<std::size_t>(a)] * stride(a);
  return flat;
}

bool GridSpec::contains(const Eigen::Ref<const Vec>& x) const {
  return (x.array() >= lo_.array()).all() && (x.array() <= hi_.array()).all();
}

bool GridSpec::operator==(const GridSpec& other) const {
  return counts_ == other.counts_ && lo_ == other.lo_ && hi_ == other.hi_;
}

GridFunction::GridFunction(GridSpec spec, Eigen::ArrayXd values)
    : spec_(std::move(spec)), values_(std::move(values)) {
  if (values_.size() != spec_.size())
    throw std::invalid_argument("GridFunction: value count does not match grid");
  if (!values_.isFinite().all()) throw std::invalid_argument("GridFunction: non-finite value");
  if ((values_ < 0.0).any()) throw std::invalid_argument("GridFunction: negative value");
}

GridFunction GridFunction::zeros(const GridSpec& spec) {
  return GridFunction(spec, Eigen::ArrayXd::Zero(spec.size()));
}

GridFunction GridFunction::sample(const GridSpec& spec, const std::function<double(const Vec&)>& fn) {
  Eigen::ArrayXd v(spec.size());
  for (Index i = 0; i < spec.size(); ++i) v[i] = fn(spec.midpoint(i));
  return GridFunction(spec, std::move(v));
}

GridFunction GridFunction::scaled(double c) const {
  if (!(c >= 0.0)) throw std::invalid_argument("GridFunction::scaled: factor must be nonnegative");
  return GridFunction(spec_, values_ * c);
}

GridFunction GridFunction::masked(const std::vector<bool>& keep) const {
  if (static_cast<Index>(keep.size()) != size())
    throw std::invalid_argument("GridFunction::masked: mask size mismatch");
  Eigen::ArrayXd v = values_;
  for (Index i = 0; i < size(); ++i)
    if (!keep[static_cast<std::size_t>(i)]) v[i] = 0.0;
  return GridFunction(spec_, std::move(v));
}

GridFunction operator+(const GridFunction& a, const GridFunction& b) {
  if (!(a.spec() == b.spec())) throw std::invalid_argument("GridFunction sum: grids differ");
  return GridFunction(a.spec(), a.values() + b.values());
}

GridFunction box_indicator(const GridSpec& spec, const Vec& lo, const Vec& hi, double height) {
  return GridFunction::sample(spec, [&](const Vec& x) {
    return ((x.array() >= lo.array()).all() && (x.array() <= hi.array()).all()) ? height : 0.0;
  });
}

double interpolate(const GridFunction& f, const Eigen::Ref<const Vec>& x) {
  const GridSpec& g = f.spec();
  const int d = g.dim();
  if (!g.contains(x)) return 0.0;
  Index base[8];
  double frac[8];
  std::vector<Index> base_v;
  std::vector<double> frac_v;
  Index* b = base;
  double* w = frac;
  if (d > 8) {
    base_v.resize(static_cast<std::size_t>(d));
    frac_v.resize(static_cast<std::size_t>(d));
    b = base_v.data();
    w = frac_v.data();
  }
  for (int a = 0; a < d; ++a) {
    double c = (x[a] - g.lo()[a]) / g.cell_width(a) - 0.5;
    const double r = std::round(c);
    if (std::abs(c - r) < 1e-10) c = r;
    const double fl = std::floor(c);
    b[a] = static_cast<Index>(fl);
    w[a] = c - fl;
  }
  double acc = 0.0;
  const Index corners = Index{1} << d;
  for (Index mask = 0; mask < corners; ++mask) {
    double weight = 1.0;
    Index flat = 0;
    bool inside = true;
    for (int a = 0; a < d; ++a) {
      const bool up = (mask >> a) & 1;
      const Index i = b[a] + (up ? 1 : 0);
      const double wa = up ? w[a] : 1.0 - w[a];
      if (wa == 0.0) {
        weight = 0.0;
        break;
      }
      if (i < 0 || i >= g.count(a)) {
        inside = false;
        break;
      }
      weight *= wa;
      flat += i * g.stride(a);
    }
    if (inside && weight != 0.0) acc += weight * f[flat];
  }
  return acc;
}

double inner_product(const GridFunction& a, const GridFunction& b) {
  if (!(a.spec() == b.spec())) throw std::invalid_argument("inner_product: grids differ");
  return (a.values() * b.values()).sum() * a.spec().cell_volume();
}

}  // namespace pararadon
