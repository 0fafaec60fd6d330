#include "pararadon/extremizer.hpp"
#include "pararadon/levels.hpp"
#include "pararadon/norms.hpp"
#include "pararadon/spectral.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

using namespace pararadon;

TEST_CASE("Euler-Lagrange residual") {
  const GridSpec s = GridSpec::centered_cube(2, 3, 48);
  const auto plan = make_plan(s, s.cell_width(0));
  const auto chi = box_indicator(s, Vec::Constant(2, -1), Vec::Constant(2, 1));
  const double r = el_residual(chi, plan);
  CHECK(r > 0.01);
  CHECK(el_residual(chi.scaled(3.7), plan) == doctest::Approx(r).epsilon(1e-12));
  const auto next = el_iterate(chi, plan);
  CHECK(lp_norm(next, 1.5) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK((next.values() >= 0).all());
}

TEST_CASE("power iteration converges and restarts at its fixed point") {
  const GridSpec s = GridSpec::centered_cube(2, 3, 32);
  const auto plan = make_plan(s, s.cell_width(0));
  const auto tr = extremize(gaussian_init(s), plan, {400, 1e-9, 0.5});
  CHECK(tr.converged);
  for (std::size_t k = 1; k < tr.rows.size(); ++k) CHECK(tr.rows[k].phi >= tr.rows[k - 1].phi - 1e-10);
  CHECK(el_residual(tr.final, plan) < tr.rows.front().residual);
  const auto again = extremize(tr.final, plan, {400, 1e-6, 0.5});
  CHECK(again.converged);
  CHECK(again.rows.size() <= 3);
  CHECK(again.A_estimate == doctest::Approx(tr.A_estimate).epsilon(1e-6));
  CHECK_THROWS(extremize(GridFunction::zeros(s), plan));
}

TEST_CASE("renormalization") {
  const GridSpec s = GridSpec::centered_cube(2, 2, 64);
  const auto centred = box_indicator(s, Vec::Constant(2, -1), Vec::Constant(2, 1));
  const auto same = renormalize(centred);
  CHECK((same.phi.L() - Eigen::MatrixXd::Identity(1, 1)).norm() < 1e-12);
  CHECK(same.phi.t() == doctest::Approx(1));
  CHECK(same.phi.u().norm() < 1e-12);
  CHECK(std::abs(same.phi.a()) < 1e-12);

  const GridSpec q(Vec::Zero(2), Vec::Constant(2, 2), {64, 64});
  const auto f = box_indicator(q, Vec::Zero(2), Vec::Ones(2), 4.0);
  const auto rn = renormalize(f);
  CHECK(rn.phi.L()(0, 0) == doctest::Approx(0.5));
  CHECK(rn.phi.t() == doctest::Approx(0.25));
  CHECK(rough_decompose(rn.g).dominant(1.5).j == 0);
  CHECK(lp_norm(rn.g, 1.5) == doctest::Approx(lp_norm(f, 1.5)).epsilon(0.02));
  const auto twice = renormalize(rn.g);
  CHECK((twice.phi.L() - Eigen::MatrixXd::Identity(1, 1)).norm() < 1e-12);
}

TEST_CASE("positivity and decay profiles") {
  const GridSpec s = GridSpec::centered_cube(2, 2, 32);
  const auto chi = box_indicator(s, Vec::Constant(2, -1), Vec::Constant(2, 1));
  const auto mins = positivity_profile(chi, {{Vec::Constant(2, -0.5), Vec::Constant(2, 0.5)},
                                             {Vec::Constant(2, -1.5), Vec::Constant(2, 1.5)},
                                             {Vec::Constant(2, 1.2), Vec::Constant(2, 1.9)},
                                             {Vec::Constant(2, 5.0), Vec::Constant(2, 6.0)}});
  CHECK(mins[0] == 1.0);
  CHECK(mins[1] == 0.0);
  CHECK(mins[1] <= mins[0]);
  CHECK(mins[2] == 0.0);
  CHECK(mins[3] == std::numeric_limits<double>::infinity());

  const GridSpec tube(Vec{{-6.0, -2.0}}, Vec{{6.0, 38.0}}, {120, 400});
  const auto f = GridFunction::sample(tube, [](const Vec& x) { return std::pow(1 + std::abs(x[0]), -2.0); });
  const auto rows = decay_profile(f);
  REQUIRE(rows.size() > 10);
  for (const auto& r : rows) CHECK(r.cells > 0);
  CHECK(fit_decay_exponent(rows) == doctest::Approx(-2.0).epsilon(0.05));
  CHECK(rows.back().shell_hi <= 6.25 + 1e-12);
}

TEST_CASE("frequency split") {
  CHECK(zeta(1.0) == 1.0);
  CHECK(zeta(2.0) == 1.0);
  CHECK(zeta(4.0) == 0.0);
  CHECK(zeta(3.0) > 0.0);
  CHECK(zeta(3.0) < 1.0);
  CHECK(zeta(2.5) >= zeta(3.5));

  const double pi = std::numbers::pi;
  const GridSpec s = GridSpec::centered_cube(2, pi, 64);
  const auto low = GridFunction::sample(s, [](const Vec& x) { return 2 + std::cos(x[0]) + std::sin(x[1]); });
  for (double rho : {1.0, 4.0}) {
    const auto sp = frequency_split(low, rho);
    CHECK(sp.flat.abs().maxCoeff() < 1e-12);
    CHECK(((sp.sharp + sp.flat) - low.values()).abs().maxCoeff() < 1e-12);
  }
  // the constant lands in the sharp part, the |xi| = 8 wave in the flat part
  const auto high = GridFunction::sample(s, [](const Vec& x) { return 1 + std::cos(8 * x[0]); });
  const auto hs = frequency_split(high, 1.0);
  CHECK((hs.sharp - 1).abs().maxCoeff() < 1e-12);
  const auto wave = GridFunction::sample(s, [](const Vec& x) { return std::abs(std::cos(8 * x[0])); });
  CHECK(signed_lp_norm(s, hs.flat, 2) == doctest::Approx(l2_norm(wave)).epsilon(1e-12));
  CHECK(spectral_energy(low) == doctest::Approx(std::pow(l2_norm(low), 2)).epsilon(1e-12));
  CHECK_THROWS(frequency_split(low, 0.5));
}
