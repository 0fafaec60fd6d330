#include "pararadon/affine_measure.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace pararadon;
using V = ChartVector<double>;
using M = ChartMatrix<double>;

TEST_CASE("arclength density") {
  CHECK(arclength_density(parabola_chart(), 0.3) == doctest::Approx(std::cbrt(2.0)).epsilon(1e-15));
  CHECK(arclength_density(parabola_chart(), 0.3) == doctest::Approx(1.259921).epsilon(1e-6));
  CHECK(arclength_density(circle_chart(), 1.1) == doctest::Approx(1.0).epsilon(1e-15));
  const CurveChart<double> line(2, 0.0, 1.0, [](double t) { return std::vector<V>{V{{t, 0.0}}, V{{1.0, 0.0}}, V{{0.0, 0.0}}}; });
  CHECK(arclength_density(line, 0.5) == 0.0);
  CHECK_THROWS_AS(arclength_density(parabola_chart(0.0, 1.0), 2.0), std::domain_error);

  // moment curve: det = 1! 2! 3! = 12
  CHECK(arclength_density(moment_curve_chart(3), 0.7) == doctest::Approx(std::pow(12.0, 1.0 / 6.0)));
  const auto fd = CurveChart<double>::finite_difference(3, -1.0, 1.0, [](double t) { return V{{t, t * t, t * t * t}}; });
  CHECK(arclength_density(fd, 0.2) == doctest::Approx(std::pow(12.0, 1.0 / 6.0)).epsilon(1e-3));
}

TEST_CASE("surface density") {
  CHECK(surface_density(paraboloid_chart(3), V{{0.2, -0.5}}) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(surface_density(paraboloid_chart(4), V{{0.2, -0.5, 1.0}}) == doctest::Approx(std::pow(2.0, 3.0 / 5.0)));
  CHECK(surface_density(paraboloid_chart(2), V{{0.4}}) == doctest::Approx(arclength_density(parabola_chart(), 0.4)));
  const auto plane = SurfaceChart<double>::finite_difference(3, V{{-1.0, -1.0}}, V{{1.0, 1.0}}, [](const V& u) {
    return V{{u[0], u[1], 0.0}};
  });
  CHECK(surface_density(plane, V{{0.1, 0.1}}) == 0.0);
  const auto fd = SurfaceChart<double>::finite_difference(3, V{{-1.0, -1.0}}, V{{1.0, 1.0}}, paraboloid_map(3));
  CHECK(surface_density(fd, V{{0.3, 0.1}}) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-4));
}

TEST_CASE("measures") {
  CHECK(measure(circle_chart(), 0.0, 2 * std::numbers::pi) == doctest::Approx(2 * std::numbers::pi).epsilon(1e-9));
  CHECK(measure(parabola_chart(), 0.0, 1.0) == doctest::Approx(std::cbrt(2.0)).epsilon(1e-9));
  CHECK(measure(parabola_chart(), 0.5, 0.5) == 0.0);
  CHECK(measure(paraboloid_chart(3), V{{0.0, 0.0}}, V{{1.0, 2.0}}, 64) == doctest::Approx(2 * std::sqrt(2.0)));
  CHECK_THROWS(measure(parabola_chart(0.0, 1.0), 0.0, 3.0));
}

TEST_CASE("affine invariance") {
  CHECK(affine_invariance_defect(parabola_chart(), M(M::Identity(2, 2)), -1.0, 1.0) == 0.0);
  const M A{{1.0, 0.4}, {-0.3, 1.7}};
  CHECK(affine_invariance_defect(polynomial_graph_chart<double>({0.0, 1.0, 0.5, 0.2}), A, -1.0, 1.0) <= 1e-9);
  CHECK(affine_invariance_defect(paraboloid_chart(3), M(2 * M::Identity(3, 3)), V{{-1.0, -1.0}}, V{{1.0, 1.0}}, 32) <= 1e-8);
  // the scaled paraboloid carries 2^{3/2} times the measure
  const M twoI = 2 * M::Identity(3, 3);
  CHECK(measure(apply_linear(twoI, paraboloid_chart(3)), V{{0.0, 0.0}}, V{{1.0, 1.0}}, 16) ==
        doctest::Approx(std::sqrt(8.0) * std::sqrt(2.0)));
  CHECK_THROWS(affine_invariance_defect(parabola_chart(), M(M::Zero(2, 2)), 0.0, 1.0));
}

TEST_CASE("reparametrization invariance") {
  const CurveReparam<double> id = [](double t) { return std::vector<double>{t, 1, 0}; };
  CHECK(reparam_invariance_defect(parabola_chart(), id, 0.0, 1.0) == 0.0);
  const CurveReparam<double> cubic = [](double t) { return std::vector<double>{t * t * t + t, 3 * t * t + 1, 6 * t}; };
  CHECK(reparam_invariance_defect(parabola_chart(), cubic, 0.0, 1.0) <= 1e-6);
  const CurveReparam<double> cubic3 = [](double t) {
    return std::vector<double>{t * t * t + t, 3 * t * t + 1, 6 * t, 6};
  };
  CHECK(reparam_invariance_defect(moment_curve_chart(3), cubic3, 0.0, 1.0) <= 1e-6);
  const CurveReparam<double> fold = [](double t) { return std::vector<double>{t * t, 2 * t, 2}; };
  CHECK_THROWS_AS(reparam_invariance_defect(parabola_chart(), fold, -1.0, 1.0), std::domain_error);

  const M S{{1.0, 0.5}, {0.0, 1.0}};
  const SurfaceReparam<double> shear = [S](const V& s) {
    return SurfaceReparamJet<double>{S * s, S, {M::Zero(2, 2), M::Zero(2, 2)}};
  };
  CHECK(reparam_invariance_defect(paraboloid_chart(3), shear, V{{0.0, 0.0}}, V{{1.0, 1.0}}, 64) <= 1e-6);
  const SurfaceReparam<double> bend = [](const V& s) {
    M H0 = M::Zero(2, 2), H1 = M::Zero(2, 2);
    H0(0, 0) = 6 * s[0];
    return SurfaceReparamJet<double>{V{{s[0] * s[0] * s[0] + s[0], s[1]}}, M{{3 * s[0] * s[0] + 1, 0.0}, {0.0, 1.0}},
                                     {H0, H1}};
  };
  const auto skew = apply_linear(M{{1.0, 0.2, 0.0}, {0.0, 1.0, 0.0}, {0.3, 0.0, 1.0}}, paraboloid_chart(3));
  CHECK(reparam_invariance_defect(skew, bend, V{{0.0, 0.0}}, V{{1.0, 1.0}}, 128) <= 1e-4);
}
