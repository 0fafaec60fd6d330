#include "pararadon/norms.hpp"
#include "pararadon/transform.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace pararadon;

namespace {
GridFunction random_function(const GridSpec& s, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Eigen::ArrayXd v(s.size());
  for (Index i = 0; i < v.size(); ++i) v[i] = u(rng);
  return GridFunction(s, v);
}
}  // namespace

TEST_CASE("transform of the unit square indicator") {
  const GridSpec s = GridSpec::centered_cube(2, 2, 128);
  const auto chi = box_indicator(s, Vec::Constant(2, -1), Vec::Constant(2, 1));
  const auto plan = make_plan(s, 1.0 / 128);
  CHECK(forward_at(chi, plan, Vec{{0.0, 0.0}}) == doctest::Approx(2.0).epsilon(0.01));
  CHECK(forward_at(chi, plan, Vec{{0.0, 2.0}}) <= 0.02);

  const auto adj = adjoint_transform(chi, make_plan(s, 1.0 / 128, AdjointMode::Continuum));
  CHECK(interpolate(adj, Vec{{0.0, 0.0}}) == doctest::Approx(2.0).epsilon(0.02));

  // <chi, T chi> = int (2-|t|)(2-t^2) over t^2 <= 2
  const double exact = 16 * std::sqrt(2.0) / 3 - 2;
  CHECK(bilinear_form(chi, chi, plan) == doctest::Approx(exact).epsilon(0.02));
  CHECK(bilinear_form(chi, GridFunction::zeros(s), plan) == 0.0);
  CHECK(bilinear_form(GridFunction::zeros(s), chi, plan) == 0.0);
}

TEST_CASE("rayleigh ratio of the square is grid stable") {
  double r[2];
  int k = 0;
  for (Index n : {128, 256}) {
    const GridSpec s = GridSpec::centered_cube(2, 2, n);
    const auto chi = box_indicator(s, Vec::Constant(2, -1), Vec::Constant(2, 1));
    r[k++] = rayleigh_ratio(chi, make_plan(s, 4.0 / static_cast<double>(n)));
  }
  CHECK(r[0] > 0);
  CHECK(std::abs(r[0] - r[1]) / r[1] < 0.01);
  const GridSpec s = GridSpec::centered_cube(2, 2, 64);
  const auto f = box_indicator(s, Vec::Constant(2, -1), Vec::Constant(2, 1));
  const auto plan = make_plan(s, 1.0 / 16);
  CHECK(rayleigh_ratio(f.scaled(7.5), plan) == doctest::Approx(rayleigh_ratio(f, plan)).epsilon(1e-12));
  CHECK_THROWS(rayleigh_ratio(GridFunction::zeros(s), plan));
}

TEST_CASE("discrete adjoint is the exact transpose") {
  std::mt19937_64 rng(3);
  const GridSpec in(Vec{{-1.0, -1.0}}, Vec{{1.0, 1.5}}, {24, 20});
  const GridSpec out(Vec{{-1.5, -0.5}}, Vec{{1.0, 2.0}}, {18, 22});
  const auto plan = make_plan(in, out, 0.05);
  for (int k = 0; k < 10; ++k) {
    const auto f = random_function(in, rng);
    const auto g = random_function(out, rng);
    const double lhs = inner_product(g, forward_transform(f, plan));
    const double rhs = inner_product(adjoint_transform(g, plan), f);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * (1 + std::abs(lhs)));
  }
  CHECK(adjoint_transform(GridFunction::zeros(out), plan).is_zero());
}

TEST_CASE("linearity, positivity and translation equivariance") {
  std::mt19937_64 rng(5);
  const GridSpec s = GridSpec::centered_cube(2, 2, 32);
  const auto plan = make_plan(s, 1.0 / 8);
  const auto f = random_function(s, rng), g = random_function(s, rng);
  const auto lhs = forward_transform(f.scaled(2) + g, plan);
  const auto rhs = forward_transform(f, plan).scaled(2) + forward_transform(g, plan);
  CHECK((lhs.values() - rhs.values()).abs().maxCoeff() < 1e-12);
  CHECK((lhs.values() >= 0).all());
  CHECK((adjoint_transform(f, plan).values() >= 0).all());

  // bump well inside the box, shifted by whole cells
  const auto bump = [](double cx, double cy) {
    return [cx, cy](const Vec& x) { return std::exp(-8 * ((x[0] - cx) * (x[0] - cx) + (x[1] - cy) * (x[1] - cy))); };
  };
  const GridSpec big = GridSpec::centered_cube(2, 4, 64);
  const auto plan2 = make_plan(big, big.cell_width(0));
  const double h = big.cell_width(0);
  const auto Tf = forward_transform(GridFunction::sample(big, bump(0, -1)), plan2);
  const auto Tg = forward_transform(GridFunction::sample(big, bump(4 * h, -1 + 2 * h)), plan2);
  const auto i0 = big.ravel({40, 30}), i1 = big.ravel({44, 32});
  CHECK(Tg[i1] == doctest::Approx(Tf[i0]).epsilon(1e-9));
}

TEST_CASE("continuum adjoint converges to the discrete transpose") {
  const auto g_of = [](const GridSpec& s) {
    return GridFunction::sample(s, [](const Vec& x) { return std::exp(-(x[0] * x[0] + (x[1] - 0.5) * (x[1] - 0.5))); });
  };
  double err[2];
  int k = 0;
  for (Index n : {32, 64}) {
    const GridSpec s = GridSpec::centered_cube(2, 3, n);
    const auto g = g_of(s);
    const auto d = adjoint_transform(g, make_plan(s, s.cell_width(0)));
    const auto c = adjoint_transform(g, make_plan(s, s.cell_width(0), AdjointMode::Continuum));
    err[k++] = (d.values() - c.values()).abs().maxCoeff() / c.values().abs().maxCoeff();
  }
  CHECK(err[1] < 0.05);
  CHECK(err[1] < err[0]);
}
