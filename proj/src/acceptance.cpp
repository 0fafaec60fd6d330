#include "pararadon/acceptance.hpp"

#include "pararadon/affine_measure.hpp"
#include "pararadon/extremizer.hpp"
#include "pararadon/levels.hpp"
#include "pararadon/norms.hpp"
#include "pararadon/paraball.hpp"
#include "pararadon/paraball_search.hpp"
#include "pararadon/pullback.hpp"
#include "pararadon/spectral.hpp"
#include "pararadon/symmetry.hpp"
#include "pararadon/transform.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

namespace pararadon {

namespace {

using Clock = std::chrono::steady_clock;
using Rng = std::mt19937_64;

double elapsed(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double x, int prec = 3) {
  std::ostringstream os;
  os << std::setprecision(prec) << x;
  return os.str();
}

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

Vec random_vec(Rng& rng, Index n, double lo, double hi) {
  Vec v(n);
  for (Index i = 0; i < n; ++i) v[i] = uniform(rng, lo, hi);
  return v;
}

// Elements with singular values of L in [0.7, 1.4], |t| in [0.6, 1.6] and
// translation-type parameters in [-1, 1].
GroupElementd moderate_element(int d, Rng& rng) {
  const int m = d - 1;
  const Eigen::MatrixXd R1 = random_rotation(m, rng), R2 = random_rotation(m, rng);
  const Vec s = random_vec(rng, m, 0.7, 1.4);
  const Eigen::MatrixXd L = R1 * s.asDiagonal() * R2;
  const double t = uniform(rng, 0.6, 1.6) * (uniform(rng, 0, 1) < 0.5 ? -1.0 : 1.0);
  return make_element<double>(L, random_vec(rng, m, -1, 1), t, uniform(rng, -1, 1), random_vec(rng, m, -1, 1));
}

// Broader random elements for the algebraic checks.
GroupElementd random_element(int d, Rng& rng) {
  const int m = d - 1;
  std::normal_distribution<double> g;
  Eigen::MatrixXd L = Eigen::MatrixXd::Identity(m, m);
  for (Index i = 0; i < L.size(); ++i) L.data()[i] += 0.5 * g(rng);
  const double t = uniform(rng, 0.3, 3.0) * (uniform(rng, 0, 1) < 0.5 ? -1.0 : 1.0);
  return make_element<double>(L, random_vec(rng, m, -2, 2), t, uniform(rng, -2, 2), random_vec(rng, m, -2, 2));
}

double bump(const Vec& x, const Vec& c, double radius) {
  const double s = 1.0 - (x - c).squaredNorm() / (radius * radius);
  return s > 0 ? s * s * s : 0.0;
}

GridFunction random_field(const GridSpec& spec, Rng& rng) {
  Eigen::ArrayXd v(spec.size());
  for (Index i = 0; i < v.size(); ++i) v[i] = uniform(rng, 0, 1);
  return GridFunction(spec, v);
}

struct Context {
  std::uint64_t seed;
  std::optional<GridFunction> extremizer;  // filled by criterion 11
  std::optional<TransformPlan> extremizer_plan;
};

// ------------------------------------------------------------------ 1

CriterionResult discrete_adjointness(Context& ctx) {
  CriterionResult r{1, "discrete adjointness (64^2, 100 pairs)", false, "", 0};
  const auto t0 = Clock::now();
  Rng rng(ctx.seed + 1);
  const GridSpec spec = GridSpec::centered_cube(2, 2.0, 64);
  const TransformPlan plan = make_plan(spec, spec.cell_width(0));
  double worst = 0;
  for (int k = 0; k < 100; ++k) {
    const GridFunction f = random_field(spec, rng), g = random_field(spec, rng);
    const double lhs = bilinear_form(g, f, plan);
    const double rhs = inner_product(adjoint_transform(g, plan), f);
    worst = std::max(worst, std::abs(lhs - rhs) / (1 + std::abs(lhs)));
  }
  const double secs = elapsed(t0);
  r.pass = worst <= 1e-12 && secs < 10;
  r.detail = "max |<g,Tf>-<T*g,f>|/(1+|<g,Tf>|) = " + fmt(worst) + ", " + fmt(secs) + " s";
  return r;
}

// ------------------------------------------------------------------ 2

CriterionResult forward_oracle(Context&) {
  CriterionResult r{2, "forward transform oracle T chi(0,0)=2, T chi(0,2)=0", false, "", 0};
  const GridSpec spec = GridSpec::centered_cube(2, 2.0, 256);
  const GridFunction chi = box_indicator(spec, Vec::Constant(2, -1.0), Vec::Constant(2, 1.0));
  const TransformPlan plan = make_plan(spec, 1.0 / 128);
  const double at0 = forward_at(chi, plan, Vec::Zero(2));
  const double at2 = forward_at(chi, plan, Vec{{0.0, 2.0}});
  r.pass = std::abs(at0 - 2.0) <= 0.02 && at2 <= 0.02;
  r.detail = "Tchi(0,0) = " + fmt(at0, 8) + ", Tchi(0,2) = " + fmt(at2, 8);
  return r;
}

// ------------------------------------------------------------------ 3

CriterionResult incidence_preservation(Context& ctx) {
  CriterionResult r{3, "incidence preservation (1000 elements) and generators", false, "", 0};
  Rng rng(ctx.seed + 3);
  double worst = 0;
  for (int k = 0; k < 1000; ++k) {
    const int d = 2 + k % 3;
    const GroupElementd phi = random_element(d, rng);
    const Vec x = random_vec(rng, d, -3, 3), y = random_vec(rng, d, -3, 3);
    worst = std::max(worst, std::abs(incidence_defect(phi, x, y)) / (1 + std::abs(theta(x, y))));
  }
  // the four generators: translation, scaling, Galilean, linear
  bool gens = true;
  const Vec w{{0.3, -1.2, 0.7}};
  const auto tr = GroupElementd::translation(w);
  gens = gens && tr.incidence_factor() == 1.0 && tr.partner_u() == w.head(2) && tr.partner_a() == w[2] &&
         tr.partner_v().isZero(0) && tr.partner_L() == Eigen::MatrixXd::Identity(2, 2);
  const double rr = 1.7;
  const auto sc = GroupElementd::scaling(3, rr);
  gens = gens && sc.incidence_factor() == rr * rr && sc.partner_L() == sc.L() && sc.partner_u().isZero(0) &&
         sc.partner_a() == 0.0 && sc.partner_v().isZero(0);
  const Vec u0{{0.4, -0.9}};
  const auto ga = GroupElementd::galilean(u0);
  gens = gens && ga.incidence_factor() == 1.0 && ga.partner_u().isZero(0) && ga.partner_v() == 2.0 * u0 &&
         ga.partner_a() == 0.0;
  Eigen::MatrixXd L{{1.2, 0.3}, {-0.4, 0.9}};
  const auto li = GroupElementd::linear(L);
  const Eigen::MatrixXd Ldag = L.inverse().transpose();
  gens = gens && li.incidence_factor() == 1.0 && (li.partner_L() - Ldag).cwiseAbs().maxCoeff() <= 1e-15 &&
         li.partner_u().isZero(0) && li.partner_a() == 0.0 && li.partner_v().isZero(0);
  // worked pointwise forms of the generators
  const Vec y{{0.5, -0.25, 2.0}};
  const Vec gy = ga.apply_partner(y);
  gens = gens && gy[0] == y[0] && gy[1] == y[1] && std::abs(gy[2] - (y[2] + 2 * u0.dot(y.head(2)))) <= 1e-15;
  r.pass = worst <= 1e-9 && gens;
  r.detail = "max relative defect " + fmt(worst) + ", generators lambda in {1, r^2, 1, 1} " + (gens ? "ok" : "MISMATCH");
  return r;
}

// ------------------------------------------------------------------ 4

CriterionResult group_laws(Context& ctx) {
  CriterionResult r{4, "group laws: compose/inverse pointwise", false, "", 0};
  Rng rng(ctx.seed + 4);
  double worst = 0;
  auto rel = [](const Vec& a, const Vec& b) { return (a - b).lpNorm<Eigen::Infinity>() / (1 + b.lpNorm<Eigen::Infinity>()); };
  for (int c = 0; c < 6; ++c) {
    const int d = 2 + c % 2;
    const auto p1 = random_element(d, rng), p2 = random_element(d, rng), p3 = random_element(d, rng);
    const auto c21 = compose(p2, p1);
    const auto assoc_l = compose(p3, c21), assoc_r = compose(compose(p3, p2), p1);
    const auto inv = inverse(p1);
    const auto id_l = compose(inv, p1), id_r = compose(p1, inv);
    for (int k = 0; k < 100; ++k) {
      const Vec x = random_vec(rng, d, -2, 2);
      worst = std::max(worst, rel(c21.apply(x), p2.apply(p1.apply(x))));
      worst = std::max(worst, rel(c21.apply_partner(x), p2.apply_partner(p1.apply_partner(x))));
      worst = std::max(worst, rel(assoc_l.apply(x), assoc_r.apply(x)));
      worst = std::max(worst, rel(id_l.apply(x), x));
      worst = std::max(worst, rel(id_r.apply(x), x));
      worst = std::max(worst, rel(inv.apply(p1.apply(x)), x));
    }
  }
  r.pass = worst <= 1e-9;
  r.detail = "max relative pointwise error " + fmt(worst);
  return r;
}

// ------------------------------------------------------------------ 5

CriterionResult transitivity(Context& ctx) {
  CriterionResult r{5, "d-fold transitivity", false, "", 0};
  const std::vector<Vec> xs{Vec{{0.0, 0.0}}, Vec{{1.0, 1.0}}};
  const std::vector<Vec> ys{Vec{{0.0, 0.0}}, Vec{{2.0, 0.0}}};
  const auto phi = interpolate_points<double>(xs, ys, 1.0);
  const double worked = (phi.apply(xs[1]) - ys[1]).cwiseAbs().maxCoeff();
  const bool params = std::abs(phi.L()(0, 0) - 2) <= 1e-12 && std::abs(phi.v()[0] + 4) <= 1e-12 &&
                      std::abs(phi.a()) <= 1e-12 && std::abs(phi.u()[0]) <= 1e-12;
  Rng rng(ctx.seed + 5);
  double worst = 0;
  int solved = 0;
  while (solved < 100) {
    const int d = 2 + solved % 3;
    std::vector<Vec> a, b;
    for (int j = 0; j < d; ++j) {
      a.push_back(random_vec(rng, d, -2, 2));
      b.push_back(random_vec(rng, d, -2, 2));
    }
    if (!general_position(a) || !general_position(b)) continue;
    const double t = uniform(rng, 0.5, 2.0);
    const auto el = interpolate_points(a, b, t);
    for (int j = 0; j < d; ++j)
      worst = std::max(worst, (el.apply(a[static_cast<std::size_t>(j)]) - b[static_cast<std::size_t>(j)]).cwiseAbs().maxCoeff());
    ++solved;
  }
  r.pass = worked <= 1e-12 && params && worst <= 1e-9;
  r.detail = "worked instance error " + fmt(worked) + (params ? " (L=2, v=-4)" : " (parameters differ)") +
             ", random residual " + fmt(worst);
  return r;
}

// ------------------------------------------------------------------ 6

CriterionResult pullback_isometry(Context& ctx) {
  CriterionResult r{6, "pullback isometry and pairing invariance (256^2)", false, "", 0};
  Rng rng(ctx.seed + 6);
  const int n = 256;
  const Vec cf{{0.0, 0.0}}, cg{{0.0, 1.0}};
  const GridSpec fs(Vec{{-1.0, -1.0}}, Vec{{1.0, 1.0}}, {n, n});
  const GridSpec gs(Vec{{-1.5, -0.5}}, Vec{{1.5, 2.5}}, {n, n});
  const GridFunction f = GridFunction::sample(fs, [&](const Vec& x) { return bump(x, cf, 1.0); });
  const GridFunction g = GridFunction::sample(gs, [&](const Vec& x) { return bump(x, cg, 1.5); });
  const double p = ExponentPair(2).p;
  const double nf = lp_norm(f, p);
  const double base_pair = bilinear_form(g, f, make_plan(fs, gs, fs.cell_width(0)));

  double worst_norm = 0, worst_pair = 0;
  for (int k = 0; k < 10; ++k) {
    const GroupElementd phi = moderate_element(2, rng);
    const auto [flo, fhi] = preimage_bounds(phi, fs.lo(), fs.hi());
    const GridFunction pf = pullback(phi, f, GridSpec(flo, fhi, {n, n}));
    worst_norm = std::max(worst_norm, std::abs(lp_norm(pf, p) - nf) / nf);

    const auto [glo, ghi] = preimage_bounds(phi, gs.lo(), gs.hi());
    const auto [plo, phi_hi] = partner_preimage_bounds(phi, fs.lo(), fs.hi());
    const GridSpec g_grid(glo, ghi, {n, n}), f_grid(plo, phi_hi, {n, n});
    const GridFunction pg = pullback(phi, g, g_grid);
    const GridFunction qf = partner_pullback(phi, f, f_grid);
    const double pair = bilinear_form(pg, qf, make_plan(f_grid, g_grid, f_grid.cell_width(0)));
    worst_pair = std::max(worst_pair, std::abs(pair - base_pair) / std::abs(base_pair));
  }
  r.pass = worst_norm <= 0.01 && worst_pair <= 0.02;
  r.detail = "max norm drift " + fmt(worst_norm) + ", max pairing drift " + fmt(worst_pair);
  return r;
}

// ------------------------------------------------------------------ 7

CriterionResult quasidistance_properties(Context& ctx) {
  CriterionResult r{7, "quasidistance: symmetry, >=1, self=3, invariance, dual pairs", false, "", 0};
  Rng rng(ctx.seed + 7);
  bool symmetric = true, at_least_one = true, self_three = true;
  double worst_inv = 0, worst_dual = 0, worst_dual_equal_rho = 0, worst_dual_bound = 0, self_generic = 0;
  for (int k = 0; k < 200; ++k) {
    const int d = 2 + k % 2;
    const Paraballd a = random_paraball(d, rng), b = random_paraball(d, rng);
    const double dab = quasidistance(a, b);
    symmetric = symmetric && dab == quasidistance(b, a);
    at_least_one = at_least_one && dab >= 1.0;
    self_three = self_three && quasidistance(a, a) == 3.0 && quasidistance(a.dual(), a.dual()) == 3.0;

    const GroupElementd phi = moderate_element(d, rng);
    const Paraballd ma = transform_paraball(phi, a);
    const double moved = quasidistance(ma, transform_paraball(phi, b));
    self_generic = std::max(self_generic, std::abs(quasidistance(ma, ma) - 3.0));
    worst_inv = std::max(worst_inv, std::abs(moved - dab) / dab);

    const double dual = quasidistance(a.dual(), b.dual());
    worst_dual = std::max(worst_dual, std::abs(dual - dab) / dab);
    const double ratio = std::max(a.rho(), b.rho()) / std::min(a.rho(), b.rho());
    worst_dual_bound = std::max(worst_dual_bound, std::max(dual / dab, dab / dual) / (ratio * ratio));

    // same pair with b's thickness set to a's
    const Paraballd be(b.base(), b.apex(), b.basis(), b.radii(), a.rho(), 1);
    const double de = quasidistance(a, be);
    worst_dual_equal_rho = std::max(worst_dual_equal_rho, std::abs(quasidistance(a.dual(), be.dual()) - de) / de);
  }
  r.pass = symmetric && at_least_one && self_three && worst_inv <= 1e-9 && worst_dual <= 1e-9;
  r.detail = std::string("symmetric ") + (symmetric ? "yes" : "NO") + ", >=1 " + (at_least_one ? "yes" : "NO") +
             ", self=3 " + (self_three ? "yes" : "NO") + " (transformed balls: |self-3| <= " + fmt(self_generic) + ")" + ", invariance " + fmt(worst_inv) + ", dual-pair " +
             fmt(worst_dual) + " (equal rho: " + fmt(worst_dual_equal_rho) + "; ratio/(rho ratio)^2 <= " +
             fmt(worst_dual_bound) + ")";
  return r;
}

// ------------------------------------------------------------------ 8

CriterionResult entropy_refinement(Context& ctx) {
  CriterionResult r{8, "entropy refinement inequalities", false, "", 0};
  Rng rng(ctx.seed + 8);
  std::lognormal_distribution<double> ln(0.0, 2.5);
  const GridSpec spec = GridSpec::centered_cube(2, 2.0, 64);
  const double p = ExponentPair(2).p;
  int checks = 0, failures = 0;
  double tightest = 0;
  for (int k = 0; k < 20; ++k) {
    Eigen::ArrayXd v(spec.size());
    for (Index i = 0; i < v.size(); ++i) v[i] = uniform(rng, 0, 1) < 0.2 ? 0.0 : ln(rng);
    const GridFunction f(spec, v);
    const double mass = lp_mass(f, p);
    for (double eta : {0.01, 0.1, 0.5})
      for (double rexp : {p, 2.0, 3.0}) {
        const auto ref = entropy_refine(f, eta, p, rexp);
        Eigen::ArrayXd diff = f.values() - ref.refined.values();
        const double lhs = std::pow(lorentz_quasinorm(GridFunction(spec, diff), p, rexp), rexp);
        const double bound = std::pow(eta, rexp - p) * mass;
        const double card = static_cast<double>(ref.kept_levels.size());
        const bool ok = lhs <= bound && card <= std::pow(eta, -p) * mass;
        tightest = std::max(tightest, lhs / bound);
        ++checks;
        failures += ok ? 0 : 1;
      }
  }
  r.pass = failures == 0;
  r.detail = std::to_string(checks - failures) + "/" + std::to_string(checks) + " cases hold; max lhs/bound " +
             fmt(tightest);
  return r;
}

// ------------------------------------------------------------------ 9

CriterionResult partition_construction(Context&) {
  CriterionResult r{9, "interaction partition on two separated paraballs", false, "", 0};
  const GridSpec spec(Vec{{-2.5, -2.0}}, Vec{{2.5, 12.0}}, {100, 280});
  const TransformPlan plan = make_plan(spec, spec.cell_width(0));
  const std::vector<Paraballd> balls{
      Paraballd(Vec{{0.0, 0.0}}, Vec{{0.0, 0.0}}, Eigen::MatrixXd::Identity(1, 1), Vec::Ones(1), 1.0),
      Paraballd(Vec{{0.0, 10.0}}, Vec{{0.0, 10.0}}, Eigen::MatrixXd::Identity(1, 1), Vec::Ones(1), 1.0)};
  std::vector<bool> F(static_cast<std::size_t>(spec.size()), false);
  for (Index i = 0; i < spec.size(); ++i) {
    const Vec x = spec.midpoint(i);
    F[static_cast<std::size_t>(i)] = balls[0].expanded_contains(2.0, x) || balls[1].expanded_contains(2.0, x);
  }
  const double eta = 0.1, p = ExponentPair(2).p;
  const auto part = partition_by_interaction(F, balls, eta, plan);

  bool above = true, below = true, remainder_bound = true;
  for (std::size_t b = 0; b < balls.size(); ++b)
    for (Index c : part.parts[b]) above = above && part.interactions[b][c] > part.thresholds[b];
  for (Index c : part.remainder)
    for (std::size_t b = 0; b < balls.size(); ++b) below = below && part.interactions[b][c] <= part.thresholds[b];
  const double vol = spec.cell_volume();
  double worst_cross = 0;
  std::string rem;
  for (std::size_t a = 0; a < balls.size(); ++a) {
    double pairing = 0;
    for (Index c : part.remainder) pairing += part.interactions[a][c] * vol;
    const double bound = eta / 3 * std::pow(part.set_measure, 1 / p) * std::pow(part.ball_measures[a], 1 / p);
    remainder_bound = remainder_bound && pairing <= bound;
    rem += (a ? ", " : "") + fmt(pairing) + " <= " + fmt(bound);
    for (std::size_t b = 0; b < balls.size(); ++b) {
      if (a == b) continue;
      double cross = 0;
      for (Index c : part.parts[b]) cross += part.interactions[a][c] * vol;
      worst_cross = std::max(worst_cross, cross / (eta * std::pow(part.set_measure, 1 / p) * std::pow(part.ball_measures[a], 1 / p)));
    }
  }
  r.pass = above && below && remainder_bound && !part.parts[0].empty() && !part.parts[1].empty();
  r.detail = "parts " + std::to_string(part.parts[0].size()) + "/" + std::to_string(part.parts[1].size()) +
             " cells, remainder " + std::to_string(part.remainder.size()) + "; remainder pairings " + rem +
             "; max cross-interaction / bound " + fmt(worst_cross);
  return r;
}

// ------------------------------------------------------------------ 10

CriterionResult affine_measure_checks(Context& ctx) {
  CriterionResult r{10, "affine arclength and surface measure", false, "", 0};
  const auto t0 = Clock::now();
  using M = Eigen::MatrixXd;
  Rng rng(ctx.seed + 10);
  const auto parabola = parabola_chart<double>();
  double dens_err = 0;
  for (double t : {-3.0, -0.5, 0.0, 0.7, 2.5}) dens_err = std::max(dens_err, std::abs(arclength_density(parabola, t) - std::cbrt(2.0)));
  for (int d : {2, 3}) {
    const auto pb = paraboloid_chart<double>(d);
    for (int k = 0; k < 5; ++k)
      dens_err = std::max(dens_err, std::abs(surface_density(pb, random_vec(rng, d - 1, -3, 3)) -
                                             std::pow(2.0, (d - 1.0) / (d + 1.0))));
  }
  const double circle = std::abs(measure(circle_chart<double>(), 0.0, 2 * std::numbers::pi) - 2 * std::numbers::pi);

  auto random_A = [&](int d) {
    M A(d, d);
    do {
      for (Index i = 0; i < A.size(); ++i) A.data()[i] = uniform(rng, -1, 1);
    } while (std::abs(A.determinant()) < 0.1);
    return M(A * (2.0 / std::max(2.0, A.norm())) * 1.0);
  };
  double analytic = 0, fd = 0;
  // curves
  const auto fd_parabola = CurveChartd::finite_difference(2, -10, 10, parabola_map<double>());
  const auto moment = moment_curve_chart<double>(3, -2, 2);
  for (int k = 0; k < 3; ++k) {
    analytic = std::max(analytic, affine_invariance_defect(parabola, random_A(2), -1.0, 1.5));
    analytic = std::max(analytic, affine_invariance_defect(moment, random_A(3), -1.0, 1.0));
    fd = std::max(fd, affine_invariance_defect(fd_parabola, random_A(2), -1.0, 1.5));
  }
  const CurveReparam<double> cubic = [](double t) { return std::vector<double>{t * t * t + t, 3 * t * t + 1, 6 * t, 6.0}; };
  analytic = std::max(analytic, reparam_invariance_defect(parabola, cubic, 0.0, 1.0));
  analytic = std::max(analytic, reparam_invariance_defect(moment, cubic, 0.0, 1.0));
  fd = std::max(fd, reparam_invariance_defect(fd_parabola, cubic, 0.0, 1.0));
  // surfaces
  const auto pb3 = paraboloid_chart<double>(3, 4.0);
  const auto fd_pb3 = SurfaceChartd::finite_difference(3, pb3.lo(), pb3.hi(), paraboloid_map<double>(3));
  const Vec lo = Vec::Constant(2, -1.0), hi = Vec::Constant(2, 1.0);
  analytic = std::max(analytic, affine_invariance_defect(pb3, M(2.0 * M::Identity(3, 3)), lo, hi, 64));
  for (int k = 0; k < 3; ++k) {
    analytic = std::max(analytic, affine_invariance_defect(pb3, random_A(3), lo, hi, 64));
    fd = std::max(fd, affine_invariance_defect(fd_pb3, random_A(3), lo, hi, 64));
  }
  M shear{{1.0, 0.5}, {0.0, 1.0}};
  const SurfaceReparam<double> sh = [shear](const Vec& s) {
    return SurfaceReparamJet<double>{shear * s, shear, {M::Zero(2, 2), M::Zero(2, 2)}};
  };
  analytic = std::max(analytic, reparam_invariance_defect(pb3, sh, lo, hi, 64));
  fd = std::max(fd, reparam_invariance_defect(fd_pb3, sh, lo, hi, 64));
  const double secs = elapsed(t0);
  r.pass = dens_err <= 1e-8 && circle <= 1e-6 && analytic <= 1e-6 && fd <= 1e-3 && secs < 5;
  r.detail = "density error " + fmt(dens_err) + ", circle error " + fmt(circle) + ", invariance defects analytic " +
             fmt(analytic) + " / finite-difference " + fmt(fd) + ", " + fmt(secs) + " s";
  return r;
}

// ------------------------------------------------------------------ 11

ExtremizeTrace run_extremizer(Index n, TransformPlan& plan_out) {
  const GridSpec spec = GridSpec::centered_cube(2, 4.0, n);
  plan_out = make_plan(spec, 1.0 / 64);
  return extremize(gaussian_init(spec, 1.0), plan_out, {500, 1e-6, 0.5});
}

CriterionResult extremizer_run(Context& ctx) {
  CriterionResult r{11, "extremizer run (d=2, 128^2, box 8, t-step 1/64)", false, "", 0};
  const auto t0 = Clock::now();
  TransformPlan plan = make_plan(GridSpec::centered_cube(2, 4.0, 2), 1.0);
  const ExtremizeTrace tr = run_extremizer(128, plan);
  const double secs128 = elapsed(t0);

  double worst_dip = 0;
  for (std::size_t k = 1; k < tr.rows.size(); ++k) worst_dip = std::max(worst_dip, tr.rows[k - 1].phi - tr.rows[k].phi);
  const double final_residual = tr.rows.back().residual;
  const GridFunction& f = tr.final;
  const auto mins = positivity_profile(f, {{Vec::Constant(2, -2.0), Vec::Constant(2, 2.0)}});
  double drift = 0;
  for (const auto& row : tr.rows) drift = std::max(drift, row.pnorm_drift);

  TransformPlan plan96 = plan;
  const ExtremizeTrace tr96 = run_extremizer(96, plan96);
  const double change = std::abs(tr.A_estimate - tr96.A_estimate) / tr.A_estimate;

  ctx.extremizer = f;
  ctx.extremizer_plan = plan;
  const bool nondecreasing = worst_dip <= 1e-10;
  r.pass = tr.converged && nondecreasing && final_residual <= 1e-3 && mins[0] > 0 && change < 0.02 && drift <= 1e-12;
  r.detail = std::string(tr.converged ? "converged" : "NOT converged") + " in " + std::to_string(tr.rows.size() - 1) +
             " iterations, A_est " + fmt(tr.A_estimate, 8) + " (96^2: " + fmt(tr96.A_estimate, 8) + ", change " +
             fmt(change) + "), max Phi dip " + fmt(worst_dip) + ", final EL residual " + fmt(final_residual) +
             ", central min " + fmt(mins[0]) + ", max p-norm drift " + fmt(drift) + ", " + fmt(secs128) + " s at 128^2";
  return r;
}

// ------------------------------------------------------------------ 12

CriterionResult greedy_cover_check(Context& ctx) {
  CriterionResult r{12, "greedy cover recovers a single paraball", false, "", 0};
  const GridSpec spec(Vec{{-2.0, -2.0}}, Vec{{2.0, 3.0}}, {128, 160});
  const Paraballd ball(Vec{{0.2, 0.5}}, Vec{{-0.3, 0.25}}, Eigen::MatrixXd::Identity(1, 1), Vec::Constant(1, 1.2), 0.8);
  const GridFunction f = rasterize(ball, spec);
  const TransformPlan plan = make_plan(spec, spec.cell_width(0));
  const double p = ExponentPair(2).p;
  CoverOptions opts;
  opts.seed = ctx.seed;
  const CoverResult cover = greedy_cover(f, 0.05, plan, opts);
  const double mass = lp_mass(f, p);
  const double first = cover.pieces.empty() ? 0.0 : lp_mass(cover.pieces.front().piece, p) / mass;
  r.pass = first >= 0.9 && cover.iterations <= cover.iteration_bound;
  r.detail = "first piece holds " + fmt(first, 4) + " of the p-mass; " + std::to_string(cover.iterations) +
             " pieces (bound " + std::to_string(cover.iteration_bound) + ")" +
             (cover.stopped_by_eta ? ", stopped by ||T residual||_q < eta ||f||_p" : "");
  return r;
}

// ------------------------------------------------------------------ 13

CriterionResult frequency_split_check(Context& ctx) {
  CriterionResult r{13, "frequency split", false, "", 0};
  const GridSpec spec = GridSpec::centered_cube(2, 4.0, 128);
  const double W = 8.0;
  const GridFunction band = GridFunction::sample(spec, [W](const Vec& x) {
    return 2.0 + std::cos(2 * std::numbers::pi * x[0] / W) * std::cos(4 * std::numbers::pi * x[1] / W);
  });
  const auto split = frequency_split(band, 1.0);
  const double flat_l2 = signed_lp_norm(spec, split.flat, 2.0);
  bool additive = (split.sharp == band.values() - split.flat).all();
  double recon = (split.sharp + split.flat - band.values()).abs().maxCoeff() / band.values().abs().maxCoeff();

  if (!ctx.extremizer) {
    TransformPlan plan = make_plan(spec, 1.0 / 64);
    ctx.extremizer = run_extremizer(128, plan).final;
  }
  const GridFunction& g = *ctx.extremizer;
  const double p = ExponentPair(2).p;
  std::vector<double> norms;
  for (double rho : {1.0, 2.0, 4.0, 8.0}) {
    const auto s = frequency_split(g, rho);
    additive = additive && (s.sharp == g.values() - s.flat).all();
    recon = std::max(recon, (s.sharp + s.flat - g.values()).abs().maxCoeff() / g.values().abs().maxCoeff());
    norms.push_back(signed_lp_norm(spec, s.flat, p));
  }
  bool monotone = true;
  for (std::size_t k = 1; k < norms.size(); ++k) monotone = monotone && norms[k] <= norms[k - 1];
  const double parseval = std::abs(spectral_energy(g) - std::pow(l2_norm(g), 2)) / std::pow(l2_norm(g), 2);
  r.pass = additive && recon <= 4 * std::numeric_limits<double>::epsilon() && flat_l2 <= 1e-12 && monotone;
  r.detail = std::string("sharp = g - flat bitwise ") + (additive ? "yes" : "NO") + " (recombination error " +
             fmt(recon) + "), band-limited ||g_flat||_2 = " + fmt(flat_l2) + ", extremizer ||g_flat||_p over rho=1,2,4,8: " +
             fmt(norms[0]) + ", " + fmt(norms[1]) + ", " + fmt(norms[2]) + ", " + fmt(norms[3]) +
             ", Parseval defect " + fmt(parseval);
  return r;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts, std::ostream* log) {
  using Fn = std::function<CriterionResult(Context&)>;
  const std::vector<Fn> criteria{discrete_adjointness,   forward_oracle,         incidence_preservation,
                                 group_laws,             transitivity,           pullback_isometry,
                                 quasidistance_properties, entropy_refinement,   partition_construction,
                                 affine_measure_checks,  extremizer_run,         greedy_cover_check,
                                 frequency_split_check};
  Context ctx{opts.seed, std::nullopt, std::nullopt};
  std::vector<CriterionResult> out;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const int id = static_cast<int>(k) + 1;
    if (!opts.only.empty() && std::find(opts.only.begin(), opts.only.end(), id) == opts.only.end()) continue;
    const auto t0 = Clock::now();
    CriterionResult res;
    try {
      res = criteria[k](ctx);
    } catch (const std::exception& e) {
      res = {id, "criterion " + std::to_string(id), false, std::string("exception: ") + e.what(), 0};
    }
    res.seconds = elapsed(t0);
    if (log) print_results(*log, {res});
    out.push_back(std::move(res));
  }
  return out;
}

void print_results(std::ostream& os, const std::vector<CriterionResult>& results) {
  for (const auto& r : results)
    os << (r.pass ? "PASS" : "FAIL") << "  #" << std::setw(2) << std::left << r.id << std::right << ' ' << r.title
       << " [" << std::fixed << std::setprecision(2) << r.seconds << " s" << std::defaultfloat << "]: " << r.detail
       << '\n';
}

}  // namespace pararadon
