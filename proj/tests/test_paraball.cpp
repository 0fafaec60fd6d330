#include "pararadon/norms.hpp"
#include "pararadon/paraball.hpp"
#include "pararadon/paraball_search.hpp"
#include "pararadon/transform.hpp"

#include <doctest.h>

#include <numbers>
#include <random>

using namespace pararadon;

namespace {
Vec v2(double a, double b) { return Vec{{a, b}}; }
const double p32 = 1.5;

Paraballd ball_at(double x, double y) {
  return Paraballd(v2(x, y), v2(x, y), Eigen::MatrixXd::Identity(1, 1), Vec::Ones(1), 1.0);
}
}  // namespace

TEST_CASE("membership") {
  const auto B = Paraballd::unit(2);
  CHECK(B.contains(v2(0.5, 0.3)));
  CHECK_FALSE(B.contains(v2(2, 0)));
  CHECK(B.contains(B.base()));
  CHECK_FALSE(B.expanded_contains(2.0, v2(1.5, 0)));
  CHECK(B.expanded_contains(2.0, v2(1.5, 2.0)));
  CHECK_THROWS(B.expanded_contains(0.5, v2(0, 0)));
  CHECK_THROWS(Paraballd(v2(0, 0), v2(1, 0), Eigen::MatrixXd::Identity(1, 1), Vec::Ones(1), 1.0));
  CHECK_THROWS(Paraballd(v2(0, 0), v2(0, 0), Eigen::MatrixXd::Identity(1, 1), Vec::Ones(1), 0.0));
}

TEST_CASE("volume and dual") {
  CHECK(Paraballd::unit(2).volume() == doctest::Approx(4));
  CHECK(Paraballd::unit(3).volume() == doctest::Approx(2 * std::numbers::pi));
  const Paraballd B(Vec::Zero(3), Vec::Zero(3), Eigen::MatrixXd::Identity(2, 2), Vec{{1.5, 1.5}}, 1.0);
  CHECK(B.volume() == doctest::Approx(1.5 * 1.5 * 2 * std::numbers::pi));

  const auto D = Paraballd::unit(2).dual();
  CHECK(D.radii()[0] == 1);
  CHECK(D.rho() == 1);
  CHECK(D.sign() == -1);
  const Paraballd W(v2(0, 0), v2(0, 0), Eigen::MatrixXd::Identity(1, 1), Vec::Constant(1, 2.0), 1.0);
  CHECK(W.dual().radii()[0] == 0.5);
  const auto Wd = W.dual().dual();
  CHECK(Wd.radii() == W.radii());
  CHECK(Wd.base() == W.base());
  CHECK(Wd.sign() == 1);
}

TEST_CASE("quasidistance") {
  std::mt19937_64 rng(23);
  for (int d : {2, 3}) {
    for (int k = 0; k < 20; ++k) {
      const auto a = random_paraball(d, rng), b = random_paraball(d, rng);
      CHECK(quasidistance(a, a) == 3.0);
      CHECK(quasidistance(a, b) == quasidistance(b, a));
      CHECK(quasidistance(a, b) >= 1.0);
    }
  }
  const double w = 0.75;
  const auto t = quasidistance_terms(ball_at(w, 0), ball_at(0, 0));
  CHECK(t[3] + t[4] == doctest::Approx(2 * w * w));
  CHECK_THROWS_AS(quasidistance(Paraballd::unit(2), Paraballd::unit(2).dual()), std::domain_error);
}

TEST_CASE("preimage of a paraball") {
  const auto B = Paraballd::unit(2);
  const auto same = transform_paraball(GroupElementd::identity(2), B);
  CHECK((same.base() - B.base()).norm() < 1e-15);
  CHECK(same.radii()[0] == doctest::Approx(1));
  CHECK(same.rho() == doctest::Approx(1));

  const auto sc = transform_paraball(GroupElementd::scaling(2, 2.0), B);
  CHECK(sc.radii()[0] == doctest::Approx(0.5));
  CHECK(sc.rho() == doctest::Approx(0.25));

  std::mt19937_64 rng(29);
  std::normal_distribution<double> n(0, 1);
  const Paraballd C = random_paraball(3, rng);
  const GroupElementd phi(Eigen::MatrixXd{{1.2, 0.3}, {-0.1, 0.8}}, Vec{{0.2, -0.4}}, 1.3, 0.5, Vec{{0.1, 0.6}});
  const auto P = transform_paraball(phi, C);
  // sample around the preimage's base
  int agree = 0;
  const int trials = 4000;
  for (int k = 0; k < trials; ++k) {
    Vec x = P.base();
    for (int i = 0; i < 3; ++i) x[i] += n(rng) * (i < 2 ? P.radii().maxCoeff() : P.rho());
    agree += P.contains(x) == C.contains(phi.apply(x));
  }
  CHECK(agree >= trials - 4);

  const Paraballd D = random_paraball(3, rng);
  const double before = quasidistance(C, D);
  CHECK(quasidistance(P, transform_paraball(phi, D)) == doctest::Approx(before).epsilon(1e-9));
  const double dual_before = quasidistance(C.dual(), D.dual());
  CHECK(quasidistance(transform_paraball(phi, C.dual()), transform_paraball(phi, D.dual())) ==
        doctest::Approx(dual_before).epsilon(1e-9));
}

TEST_CASE("rasterize and fit") {
  const GridSpec s = GridSpec::centered_cube(2, 4, 128);
  const auto B = ball_at(0, -1);
  const auto f = rasterize(B, s);
  CHECK(lp_mass(f, p32) == doctest::Approx(B.volume()).epsilon(0.02));

  const auto start = fit_paraball(f, B.volume(), 0, 1);
  CHECK(start.evaluations <= 1);
  CHECK(start.ball.basis() == Eigen::MatrixXd::Identity(1, 1));
  CHECK(start.ball.volume() <= B.volume() * (1 + 1e-12));

  const auto fit = fit_paraball(f, B.volume(), 500, 1);
  CHECK(fit.captured >= 0.9 * lp_norm(f, p32));
  CHECK(fit.ball.volume() <= B.volume() * (1 + 1e-12));
  CHECK(fit_paraball(f, B.volume(), 200, 7).captured == fit_paraball(f, B.volume(), 200, 7).captured);
  CHECK_THROWS(fit_paraball(f, 0.0, 10));

  const auto two = rasterize(ball_at(-2.5, -1), s) + rasterize(ball_at(2.5, -1), s);
  const auto half = fit_paraball(two, B.volume(), 500, 1);
  CHECK(half.captured == doctest::Approx(std::pow(2.0, -1 / p32) * lp_norm(two, p32)).epsilon(0.1));
}

TEST_CASE("greedy cover") {
  const GridSpec s = GridSpec::centered_cube(2, 4, 96);
  const auto plan = make_plan(s, s.cell_width(0));
  const auto f = rasterize(ball_at(0, -1), s);
  const auto one = greedy_cover(f, 0.3, plan);
  REQUIRE(one.pieces.size() >= 1);
  CHECK(lp_mass(one.pieces[0].piece, p32) >= 0.9 * lp_mass(f, p32));
  CHECK(one.iterations <= one.iteration_bound);

  const auto two = rasterize(ball_at(-2.5, -1), s) + rasterize(ball_at(2.5, -1), s);
  const auto cov = greedy_cover(two, 0.1, plan);
  CHECK(cov.pieces.size() == 2);
  double total = 0;
  for (const auto& p : cov.pieces) {
    CHECK(lp_mass(p.piece, p32) == doctest::Approx(0.5 * lp_mass(two, p32)).epsilon(0.1));
    total += lp_mass(p.piece, p32);
  }
  CHECK(total <= lp_mass(two, p32) * (1 + 1e-12));
  CHECK_THROWS(greedy_cover(GridFunction::zeros(s), 0.1, plan));
  CHECK_THROWS(greedy_cover(f, 0.0, plan));
}

TEST_CASE("interaction partition") {
  const GridSpec s = GridSpec::centered_cube(2, 4, 64);
  const auto plan = make_plan(s, s.cell_width(0));
  std::vector<bool> F(static_cast<std::size_t>(s.size()), false);
  for (Index i = 0; i < s.size(); ++i) F[static_cast<std::size_t>(i)] = s.midpoint(i)[1] > -2 && s.midpoint(i)[1] < 2;

  const auto single = partition_by_interaction(F, {Paraballd::unit(2)}, 0.5, plan);
  CHECK(single.parts.size() == 1);
  for (Index i : single.parts[0]) CHECK(single.interactions[0][i] > single.thresholds[0]);
  for (Index i : single.remainder) CHECK(single.interactions[0][i] <= single.thresholds[0]);
  CHECK(single.parts[0].size() + single.remainder.size() == static_cast<std::size_t>(std::count(F.begin(), F.end(), true)));

  const auto twin = partition_by_interaction(F, {Paraballd::unit(2), Paraballd::unit(2)}, 0.5, plan);
  CHECK(twin.parts[1].empty());
  CHECK(twin.parts[0] == single.parts[0]);
  CHECK_THROWS(partition_by_interaction(F, {Paraballd::unit(2)}, 1.5, plan));
  CHECK_THROWS(partition_by_interaction(F, {}, 0.5, plan));
}

TEST_CASE("intersection fraction and envelopes") {
  const auto B = Paraballd::unit(2);
  CHECK(intersection_fraction(B, B, 20000, 3) == doctest::Approx(1.0).epsilon(0.02));
  CHECK(intersection_fraction(B, ball_at(10, 0), 20000, 3) == 0.0);
  CHECK(fit_intersection_envelope({1.0, 0.5}, {1.0, 1.0}) == doctest::Approx(1.0));
  const double C = fit_intersection_envelope({0.5}, {4.0});
  CHECK(4.0 <= C * std::pow(0.5, -C) * (1 + 1e-9));
  CHECK(fit_triangle_envelope({{{1.0, 1.0, 1.0}}}) == doctest::Approx(1.0));
  const double T = fit_triangle_envelope({{{1.0, 1.0, 10.0}}});
  CHECK(10.0 <= T * 2 * (1 + 1e-9));
}
