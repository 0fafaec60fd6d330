#include "pararadon/grid.hpp"
#include "pararadon/norms.hpp"
#include "pararadon/pullback.hpp"
#include "pararadon/symmetry.hpp"

#include <doctest.h>

#include <random>

using namespace pararadon;

namespace {
Vec v2(double a, double b) { return Vec{{a, b}}; }

double max_pointwise(const GroupElementd& a, const GroupElementd& b, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2, 2);
  double worst = 0;
  for (int k = 0; k < 100; ++k) {
    Vec x(a.dim());
    for (Index i = 0; i < x.size(); ++i) x[i] = u(rng);
    worst = std::max(worst, (a.apply(x) - b.apply(x)).norm() / (1 + a.apply(x).norm()));
  }
  return worst;
}

GroupElementd random_element(int d, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1, 1);
  const Index m = d - 1;
  Eigen::MatrixXd L = Eigen::MatrixXd::Identity(m, m);
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < m; ++j) L(i, j) += 0.4 * u(rng);
  Vec uu(m), v(m);
  for (Index i = 0; i < m; ++i) {
    uu[i] = u(rng);
    v[i] = u(rng);
  }
  return make_element<double>(L, uu, 1.5 + u(rng), u(rng), v, true);
}
}  // namespace

TEST_CASE("generators") {
  const auto tr = GroupElementd::translation(v2(0.5, -2));
  CHECK((tr.apply(v2(1, 1)) - v2(1.5, -1)).norm() < 1e-15);
  CHECK((tr.apply_partner(v2(1, 1)) - v2(1.5, -1)).norm() < 1e-15);
  CHECK(tr.incidence_factor() == 1);

  const auto sc = GroupElementd::scaling(2, 2);
  CHECK((sc.apply(v2(1, 1)) - v2(2, 4)).norm() < 1e-15);
  CHECK((sc.apply_partner(v2(1, 1)) - v2(2, 4)).norm() < 1e-15);
  CHECK(sc.incidence_factor() == 4);

  const auto ga = GroupElementd::galilean(Vec{{0.7}});
  CHECK(ga.partner_u().norm() == 0);
  CHECK(ga.partner_v()[0] == doctest::Approx(1.4));
  CHECK(ga.partner_a() == doctest::Approx(0).epsilon(1e-15));
  CHECK((ga.apply_partner(v2(2, 3)) - v2(2, 3 + 2 * 0.7 * 2)).norm() < 1e-14);

  const auto id = GroupElementd::identity(3);
  const Vec x{{0.1, -0.2, 0.3}};
  CHECK(id.apply(x) == x);
  CHECK(id.apply_partner(x) == x);
  CHECK_THROWS(GroupElementd(Eigen::MatrixXd::Zero(1, 1), Vec::Zero(1), 1, 0, Vec::Zero(1)));
  CHECK_THROWS(GroupElementd(Eigen::MatrixXd::Identity(1, 1), Vec::Zero(1), 0, 0, Vec::Zero(1)));
}

TEST_CASE("incidence identity") {
  std::mt19937_64 rng(11);
  CHECK(max_incidence_defect(GroupElementd::translation(Vec{{1.0, -3.0, 2.0}}), 50, 1) <= 1e-14);
  for (int d : {2, 3, 4}) {
    const auto phi = random_element(d, rng);
    CHECK(max_incidence_defect(phi, 200, 7) <= 1e-9);
    CHECK(phi.partner_consistency() < 1e-12);
  }
}

TEST_CASE("group laws") {
  std::mt19937_64 rng(13);
  const auto phi = random_element(3, rng);
  const auto psi = random_element(3, rng);
  CHECK(max_pointwise(compose(GroupElementd::identity(3), phi), phi, rng) < 1e-12);
  const auto ab = compose(psi, phi);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int k = 0; k < 20; ++k) {
    const Vec x{{u(rng), u(rng), u(rng)}};
    CHECK((ab.apply(x) - psi.apply(phi.apply(x))).norm() <= 1e-9 * (1 + ab.apply(x).norm()));
    CHECK((ab.apply_partner(x) - psi.apply_partner(phi.apply_partner(x))).norm() <= 1e-9 * (1 + ab.apply_partner(x).norm()));
  }
  CHECK(max_pointwise(compose(phi, inverse(phi)), GroupElementd::identity(3), rng) < 1e-9);
  const auto s6 = compose(GroupElementd::scaling(2, 2), GroupElementd::scaling(2, 3));
  CHECK(s6.L()(0, 0) == doctest::Approx(6));
  CHECK(s6.t() == doctest::Approx(36));
  const auto gi = inverse(GroupElementd::galilean(Vec{{0.5}}));
  const auto g = GroupElementd::galilean(Vec{{0.5}});
  for (int k = 0; k < 100; ++k) {
    const Vec x = v2(u(rng), u(rng));
    CHECK((gi.apply(g.apply(x)) - x).norm() < 1e-12);
  }
  CHECK(gi.u()[0] == doctest::Approx(-0.5));
}

TEST_CASE("general position and interpolation") {
  CHECK(general_position<double>({v2(0, 0), v2(1, 1)}));
  CHECK_FALSE(general_position<double>({v2(0, 0), v2(0, 5)}));
  CHECK(general_position<double>({Vec{{0.0, 0.0, 0.0}}, Vec{{1.0, 0.0, 0.0}}, Vec{{0.0, 1.0, 0.0}}}));

  const auto phi = interpolate_points<double>({v2(0, 0), v2(1, 1)}, {v2(0, 0), v2(2, 0)}, 1.0);
  CHECK(phi.L()(0, 0) == doctest::Approx(2));
  CHECK(phi.u()[0] == doctest::Approx(0).epsilon(1e-15));
  CHECK(phi.a() == doctest::Approx(0).epsilon(1e-15));
  CHECK(phi.v()[0] == doctest::Approx(-4));
  CHECK((phi.apply(v2(1, 1)) - v2(2, 0)).norm() <= 1e-12);
  CHECK(phi.apply(v2(0.5, 0.25))[1] == doctest::Approx(0.25 - 2 + 0.75));

  const auto id = interpolate_points<double>({v2(0, 1), v2(1, 3)}, {v2(0, 1), v2(1, 3)}, 1.0);
  CHECK((id.L() - Eigen::MatrixXd::Identity(1, 1)).norm() < 1e-14);
  CHECK(id.v().norm() < 1e-14);
  CHECK(std::abs(id.a()) < 1e-14);
  CHECK_THROWS_AS(interpolate_points<double>({v2(0, 0), v2(0, 5)}, {v2(0, 0), v2(2, 0)}, 1.0), std::domain_error);

  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int k = 0; k < 20; ++k) {
    std::vector<Vec> xs, ys;
    for (int j = 0; j < 3; ++j) {
      xs.push_back(Vec{{u(rng), u(rng), u(rng)}});
      ys.push_back(Vec{{u(rng), u(rng), u(rng)}});
    }
    const auto p = interpolate_points<double>(xs, ys, 0.5 + std::abs(u(rng)));
    for (int j = 0; j < 3; ++j) CHECK((p.apply(xs[j]) - ys[j]).norm() <= 1e-9);
  }
}

TEST_CASE("pullback") {
  const GridSpec s(Vec::Zero(2), Vec::Ones(2), {64, 64});
  const auto chi = box_indicator(s, Vec::Zero(2), Vec::Ones(2));
  const auto same = pullback(GroupElementd::identity(2), chi, s);
  CHECK((same.values() == chi.values()).all());

  // scaling r = 2: chi(2x, 4y) * 8^{2/3} = 4 chi on [0,1/2]x[0,1/4]
  const auto pb = pullback(GroupElementd::scaling(2, 2), chi, s);
  const auto expect = box_indicator(s, Vec::Zero(2), Vec{{0.5, 0.25}}, 4.0);
  CHECK((pb.values() - expect.values()).abs().maxCoeff() < 1e-12);
  CHECK(lp_norm(pb, 1.5) == doctest::Approx(1.0));

  const GridSpec wide = GridSpec::centered_cube(2, 4, 256);
  const auto bump = GridFunction::sample(wide, [](const Vec& x) { return std::exp(-2 * x.squaredNorm()); });
  std::mt19937_64 rng(19);
  const auto phi = random_element(2, rng);
  const auto [lo, hi] = preimage_bounds(phi, wide.lo(), wide.hi());
  const auto moved = pullback(phi, bump, GridSpec(lo, hi, {256, 256}));
  CHECK(lp_norm(moved, 1.5) == doctest::Approx(lp_norm(bump, 1.5)).epsilon(0.01));
}
