#include "pararadon/grid.hpp"
#include "pararadon/levels.hpp"
#include "pararadon/norms.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace pararadon;

namespace {
const double p32 = 1.5;

GridSpec square(double lo, double hi, Index n) { return GridSpec(Vec::Constant(2, lo), Vec::Constant(2, hi), {n, n}); }
}  // namespace

TEST_CASE("grid spec geometry") {
  const GridSpec s(Vec{{-1.0, 0.0}}, Vec{{1.0, 4.0}}, {4, 8});
  CHECK(s.size() == 32);
  CHECK(s.cell_width(0) == doctest::Approx(0.5));
  CHECK(s.cell_width(1) == doctest::Approx(0.5));
  CHECK(s.box_volume() == doctest::Approx(8.0));
  for (Index k = 0; k < s.size(); ++k) CHECK(s.ravel(s.unravel(k)) == k);
  const Vec m = s.midpoint(0);
  CHECK(m[0] == doctest::Approx(-0.75));
  CHECK(m[1] == doctest::Approx(0.25));
  CHECK_THROWS(GridSpec(Vec{{0.0, 0.0}}, Vec{{1.0, 0.0}}, {2, 2}));
}

TEST_CASE("interpolation reproduces affine functions") {
  const GridSpec s = square(-1, 1, 16);
  const auto f = GridFunction::sample(s, [](const Vec& x) { return 3 * x[0] - 2 * x[1] + 5.5; });
  CHECK(interpolate(f, Vec{{0.1, -0.23}}) == doctest::Approx(3 * 0.1 + 0.46 + 5.5));
  CHECK(interpolate(f, Vec{{5.0, 0.0}}) == 0.0);
}

TEST_CASE("lp norm") {
  const GridSpec s = square(0, 2, 64);
  CHECK(lp_norm(box_indicator(s, Vec{{0.0, 0.0}}, Vec{{1.0, 1.0}}), p32) == doctest::Approx(1.0));
  CHECK(lp_norm(GridFunction::zeros(s), p32) == 0.0);
  const auto f = box_indicator(s, Vec{{0.0, 0.0}}, Vec{{1.0, 2.0}}, 2.0);
  CHECK(lp_norm(f, p32) == doctest::Approx(std::pow(std::pow(2.0, 1.5) * 2.0, 2.0 / 3.0)).epsilon(1e-12));
  CHECK(lp_norm(f, p32) == doctest::Approx(3.1748).epsilon(1e-4));
  CHECK_THROWS(lp_norm(f, 0.5));
  const ExponentPair e(3);
  CHECK(e.p == doctest::Approx(4.0 / 3.0));
  CHECK(e.q == 4.0);
}

TEST_CASE("tail mass") {
  const GridSpec s = square(0, 1, 32);
  const auto f = box_indicator(s, Vec{{0.0, 0.0}}, Vec{{1.0, 1.0}});
  CHECK(tail_mass(f, 10, p32) == 0.0);
  CHECK(tail_mass(f, 0, p32) == doctest::Approx(1.0));
  const GridSpec big = square(0, 3, 600);
  const auto g = box_indicator(big, Vec{{0.0, 0.0}}, Vec{{3.0, 3.0}});
  CHECK(tail_mass(g, 3, p32) == doctest::Approx(9 - 9 * std::numbers::pi / 4).epsilon(5e-3));
}

TEST_CASE("psi integral") {
  const GridSpec s = square(0, 2, 32);
  const auto chi = box_indicator(s, Vec{{0.0, 0.0}}, Vec{{1.0, 1.0}});
  CHECK(psi_integral(chi, [](double t) { return std::pow(t, 1.5); }) == doctest::Approx(1.0));
  CHECK(psi_integral(chi.scaled(3), [](double t) { return t * t; }) == doctest::Approx(9.0));
  const auto psi = [](double t) { return t == 0 ? 0.0 : std::pow(t, 1.5) * std::max(1.0, std::abs(std::log2(t))); };
  CHECK(psi_integral(chi.scaled(4), psi) == doctest::Approx(16.0));
  CHECK_THROWS(psi_integral(chi, [](double t) { return t + 1; }));
}

TEST_CASE("rough level decomposition") {
  const GridSpec s = square(0, 2, 16);
  const auto f5 = box_indicator(s, Vec{{0.0, 0.0}}, Vec{{1.0, 1.0}}, 5.0);
  const auto r5 = rough_decompose(f5);
  REQUIRE(r5.levels().size() == 1);
  CHECK(r5.levels()[0].j == 2);
  CHECK(r5.levels()[0].residuals[0] == doctest::Approx(1.25));
  CHECK(r5.measure(r5.levels()[0]) == doctest::Approx(1.0));
  CHECK((r5.reconstruct().values() == f5.values()).all());

  const auto f = box_indicator(s, Vec{{0.0, 0.0}}, Vec{{1.0, 1.0}}, 0.01) +
                 box_indicator(s, Vec{{1.0, 1.0}}, Vec{{2.0, 2.0}}, 1.5);
  const auto r = rough_decompose(f);
  REQUIRE(r.levels().size() == 2);
  CHECK(r.levels()[0].j == -7);
  CHECK(r.levels()[0].residuals[0] == doctest::Approx(1.28));
  CHECK(r.levels()[1].j == 0);
  CHECK(r.levels()[1].residuals[0] == doctest::Approx(1.5));
  CHECK(r.dominant(p32).j == 0);
  CHECK(rough_decompose(GridFunction::zeros(s)).empty());
}

TEST_CASE("lorentz quasinorm") {
  const GridSpec s = square(0, 2, 16);
  const auto f5 = box_indicator(s, Vec{{0.0, 0.0}}, Vec{{1.0, 1.0}}, 5.0);
  CHECK(lorentz_quasinorm(f5, p32, 2) == doctest::Approx(4.0));
  CHECK(lorentz_quasinorm(f5, p32, INFINITY) == doctest::Approx(4.0));
  CHECK(lorentz_quasinorm(GridFunction::zeros(s), p32, 2) == 0.0);
  const auto f = box_indicator(s, Vec{{0.0, 0.0}}, Vec{{1.0, 1.0}}) +
                 box_indicator(s, Vec{{1.0, 1.0}}, Vec{{2.0, 2.0}}, 4.0);
  CHECK(lorentz_quasinorm(f, p32, 2) == doctest::Approx(std::sqrt(17.0)));
}

TEST_CASE("entropy refinement and trimming") {
  const GridSpec s = square(0, 2, 16);
  const auto A = box_indicator(s, Vec{{0.0, 0.0}}, Vec{{1.0, 1.0}}, 1.5);
  const auto B = box_indicator(s, Vec{{1.0, 1.0}}, Vec{{2.0, 2.0}}, 0.01);
  const auto f = A + B;

  const auto ref = entropy_refine(f, 0.1, p32, 2);
  CHECK(ref.kept_levels == std::set<int>{0});
  CHECK((ref.refined.values() == A.values()).all());
  CHECK((entropy_refine(f, 1e-4, p32, 2).refined.values() == f.values()).all());
  const auto none = entropy_refine(f, 10, p32, 2);
  CHECK(none.kept_levels.empty());
  CHECK(none.refined.is_zero());
  CHECK_THROWS(entropy_refine(f, 0.1, p32, 1.2));

  const double np = lp_norm(f, p32);
  CHECK((trim_small_levels(f, 0.05 / np, p32).values() == B.values()).all());
  const auto single = box_indicator(s, Vec{{0.0, 0.0}}, Vec{{1.0, 1.0}});
  CHECK((trim_small_levels(single, 2, p32).values() == single.values()).all());
  CHECK(trim_small_levels(single, 1e-9, p32).is_zero());
}
