// pararadon: command-line front end.
//
// Every subcommand prints a one-line JSON metadata header followed by CSV,
// to --out when given (or --table for commands that also write a grid),
// otherwise to stdout. Exit status: 0 ok, 1 runtime error, 2 usage error.

#include "pararadon/acceptance.hpp"
#include "pararadon/affine_measure.hpp"
#include "pararadon/extremizer.hpp"
#include "pararadon/io.hpp"
#include "pararadon/levels.hpp"
#include "pararadon/norms.hpp"
#include "pararadon/parallel.hpp"
#include "pararadon/paraball.hpp"
#include "pararadon/paraball_search.hpp"
#include "pararadon/pullback.hpp"
#include "pararadon/symmetry.hpp"
#include "pararadon/transform.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

using namespace pararadon;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

struct Table {
  json meta;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add(std::vector<std::string> row) { rows.push_back(std::move(row)); }

  void write(std::ostream& os) const {
    os << meta.dump() << '\n';
    for (std::size_t c = 0; c < columns.size(); ++c) os << (c ? "," : "") << columns[c];
    os << '\n';
    for (const auto& row : rows) {
      for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << row[c];
      os << '\n';
    }
  }
};

void emit(const Table& t, const std::string& path) {
  if (path.empty()) {
    t.write(std::cout);
    return;
  }
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open '" + path + "' for writing");
  t.write(os);
}

Vec parse_vec(const std::string& s) {
  std::vector<double> vals;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      vals.push_back(std::stod(item));
    } catch (...) {
      throw UsageError("not a number list: '" + s + "'");
    }
  }
  if (vals.empty()) throw UsageError("empty number list");
  return Eigen::Map<Vec>(vals.data(), static_cast<Index>(vals.size()));
}

json grid_meta(const GridFunction& f) { return to_json(f.spec()); }

// --------------------------------------------------------------- config

// Values of a --config JSON object become command-line options of the
// selected subcommand, unless given explicitly on the command line.
std::vector<std::string> expand_config(const std::vector<std::string>& args, const CLI::App& app) {
  std::string config_path, sub;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) config_path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) config_path = args[i].substr(9);
    if (sub.empty())
      for (const CLI::App* s : app.get_subcommands({}))
        if (s->get_name() == args[i]) sub = args[i];
  }
  if (config_path.empty()) return args;
  if (sub.empty()) throw UsageError("--config needs a subcommand");
  json cfg;
  try {
    cfg = load_json(config_path);
  } catch (const json::exception& e) {
    throw UsageError(std::string("config: ") + e.what());
  }
  if (!cfg.is_object()) throw UsageError("config must be a JSON object");
  const CLI::App* sc = app.get_subcommand(sub);
  std::vector<std::string> out;
  std::vector<std::string> extra;
  for (const auto& [key, value] : cfg.items()) {
    const CLI::Option* opt = sc->get_option_no_throw("--" + key);
    if (opt == nullptr) opt = app.get_option_no_throw("--" + key);
    if (opt == nullptr || key == "config") throw UsageError("config: unknown key '" + key + "' for " + sub);
    bool given = false;
    for (const auto& a : args) given = given || a == "--" + key || a.rfind("--" + key + "=", 0) == 0;
    if (given) continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) extra.push_back("--" + key);
      continue;
    }
    std::string text;
    if (value.is_string())
      text = value.get<std::string>();
    else if (value.is_array()) {
      for (std::size_t i = 0; i < value.size(); ++i) text += (i ? "," : "") + value[i].dump();
    } else
      text = value.dump();
    extra.push_back("--" + key);
    extra.push_back(text);
  }
  for (const auto& a : args) {
    out.push_back(a);
    if (a == sub) out.insert(out.end(), extra.begin(), extra.end());
  }
  return out;
}

AdjointMode parse_mode(const std::string& s) {
  if (s == "discrete") return AdjointMode::Discrete;
  if (s == "continuum") return AdjointMode::Continuum;
  throw UsageError("adjoint mode must be 'discrete' or 'continuum'");
}

double default_tstep(const GridSpec& spec, double requested) {
  if (requested > 0) return requested;
  double h = std::numeric_limits<double>::infinity();
  for (int a = 0; a + 1 < spec.dim(); ++a) h = std::min(h, spec.cell_width(a));
  return h;
}

GroupElementd element_from_flags(const std::string& gen, const std::string& params, int dim, const std::string& file) {
  if (!file.empty()) return group_element_from_json(load_json(file));
  if (gen == "identity") return GroupElementd::identity(dim);
  const Vec p = parse_vec(params);
  if (gen == "translate") return GroupElementd::translation(p);
  if (gen == "scale") {
    if (p.size() != 1) throw UsageError("scale takes one parameter");
    return GroupElementd::scaling(dim, p[0]);
  }
  if (gen == "galilean") return GroupElementd::galilean(p);
  if (gen == "linear") {
    const auto m = static_cast<Index>(std::lround(std::sqrt(static_cast<double>(p.size()))));
    if (m * m != p.size()) throw UsageError("linear takes a square matrix, row-major");
    Eigen::MatrixXd L(m, m);
    for (Index i = 0; i < m; ++i)
      for (Index j = 0; j < m; ++j) L(i, j) = p[i * m + j];
    return GroupElementd::linear(L);
  }
  throw UsageError("unknown generator '" + gen + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical toolkit for convolution with the paraboloid measure"};
  app.require_subcommand(1);
  app.fallthrough();
  int threads = 0;
  std::uint64_t seed = 0;
  std::string config;
  app.add_option("--threads", threads, "worker threads (default: PARARADON_THREADS or 1)");
  app.add_option("--seed", seed, "random seed");
  app.add_option("--config", config, "JSON file of option values for the subcommand");

  std::string in, out, table_out, mode = "discrete";
  double tstep = 0;

  // transform / adjoint
  auto* tr = app.add_subcommand("transform", "T f on the input grid");
  auto* adj = app.add_subcommand("adjoint", "T* g on the input grid");
  for (auto* s : {tr, adj}) {
    s->add_option("--in", in, "input PRGF1 file")->required();
    s->add_option("--out", out, "output PRGF1 file")->required();
    s->add_option("--tstep", tstep, "t-quadrature step (default: input cell width)");
    s->add_option("--adjoint-mode", mode, "discrete | continuum");
    s->add_option("--table", table_out, "summary CSV path (default stdout)");
  }

  // norms
  double p_exp = 0, r_exp = 2, radius = -1;
  auto* nm = app.add_subcommand("norms", "L^p, Lorentz and tail norms");
  nm->add_option("--in", in, "input PRGF1 file")->required();
  nm->add_option("--p", p_exp, "exponent (default (d+1)/d)");
  nm->add_option("--r", r_exp, "Lorentz second exponent (inf allowed)");
  nm->add_option("--radius", radius, "tail radius");
  nm->add_option("--out", out, "CSV path");

  // decompose / refine
  auto* dc = app.add_subcommand("decompose", "rough level set decomposition");
  dc->add_option("--in", in, "input PRGF1 file")->required();
  dc->add_option("--p", p_exp, "exponent (default (d+1)/d)");
  dc->add_option("--out", out, "CSV path");
  double eta = 0.1;
  auto* rf = app.add_subcommand("refine", "entropy refinement");
  rf->add_option("--in", in, "input PRGF1 file")->required();
  rf->add_option("--out", out, "refined PRGF1 file")->required();
  rf->add_option("--eta", eta, "level score threshold");
  rf->add_option("--p", p_exp, "exponent (default (d+1)/d)");
  rf->add_option("--r", r_exp, "Lorentz second exponent (>= p)");
  rf->add_option("--table", table_out, "summary CSV path (default stdout)");

  // symmetry
  std::string generator = "identity", params, element_file;
  int dim = 2, pairs = 100;
  auto* sy = app.add_subcommand("symmetry", "group element, partner and pullback");
  sy->add_option("--generator", generator, "identity | translate | scale | galilean | linear");
  sy->add_option("--params", params, "comma-separated generator parameters");
  sy->add_option("--dim", dim, "dimension d");
  sy->add_option("--element", element_file, "JSON group element {L,u,t,a,v}");
  sy->add_option("--pairs", pairs, "random pairs for the incidence check");
  sy->add_option("--in", in, "PRGF1 file to pull back");
  sy->add_option("--pullback-out", table_out, "PRGF1 path for the pullback");
  sy->add_option("--out", out, "CSV path");

  // paraball-dist
  std::string ball_a, ball_b;
  auto* pd = app.add_subcommand("paraball-dist", "quasidistance of two paraballs");
  pd->add_option("--a", ball_a, "paraball JSON")->required();
  pd->add_option("--b", ball_b, "paraball JSON")->required();
  pd->add_option("--out", out, "CSV path");

  // partition
  std::string balls_file;
  auto* pt = app.add_subcommand("partition", "interaction partition of a cell set");
  pt->add_option("--in", in, "PRGF1 file; the set is {value > 0}")->required();
  pt->add_option("--balls", balls_file, "JSON array of paraballs")->required();
  pt->add_option("--eta", eta, "eta in (0, 1]");
  pt->add_option("--tstep", tstep, "t-quadrature step");
  pt->add_option("--out", out, "CSV path");

  // cover
  int budget = 500;
  double threshold = 0.1;
  auto* cv = app.add_subcommand("cover", "greedy paraball extraction");
  cv->add_option("--in", in, "input PRGF1 file")->required();
  cv->add_option("--eta", eta, "stop once ||T residual||_q < eta ||f||_p");
  cv->add_option("--budget", budget, "objective evaluations per fit");
  cv->add_option("--threshold", threshold, "relative capture threshold");
  cv->add_option("--tstep", tstep, "t-quadrature step");
  cv->add_option("--out", out, "CSV path");

  // extremize
  int grid_n = 128, max_iters = 500;
  double box = 8, theta = 0.5, tol = 1e-6, sigma = 1.0;
  std::string init = "gaussian", init_file, final_out;
  auto* ex = app.add_subcommand("extremize", "Euler-Lagrange fixed-point iteration");
  ex->add_option("--dim", dim, "dimension d");
  ex->add_option("--grid", grid_n, "cells per axis");
  ex->add_option("--box", box, "box width");
  ex->add_option("--tstep", tstep, "t-quadrature step (default: cell width)");
  ex->add_option("--theta", theta, "damping in (0, 1]");
  ex->add_option("--tol", tol, "relative Phi change tolerance");
  ex->add_option("--max-iters", max_iters, "iteration cap");
  ex->add_option("--init", init, "gaussian | indicator | file");
  ex->add_option("--init-file", init_file, "PRGF1 initial datum for --init file");
  ex->add_option("--sigma", sigma, "Gaussian width");
  ex->add_option("--out", out, "trace CSV path");
  ex->add_option("--final", final_out, "final iterate PRGF1 path (default: trace path with .prgf)");

  // affine-measure
  std::string chart = "parabola", coeffs;
  double lo = 0, hi = 1, step = 0;
  int samples = 11, nodes = 4096;
  bool fd = false;
  auto* am = app.add_subcommand("affine-measure", "affine arclength / surface densities and measure");
  am->add_option("--chart", chart, "parabola | circle | moment | polynomial | paraboloid");
  am->add_option("--dim", dim, "dimension (moment, paraboloid)");
  am->add_option("--coeffs", coeffs, "polynomial coefficients c0,c1,...");
  am->add_option("--lo", lo, "region lower end (per axis)");
  am->add_option("--hi", hi, "region upper end (per axis)");
  am->add_option("--samples", samples, "density samples per axis");
  am->add_option("--nodes", nodes, "quadrature nodes per axis");
  am->add_flag("--fd", fd, "finite-difference derivatives");
  am->add_option("--step", step, "relative finite-difference step (default 1e-4)");
  am->add_option("--out", out, "CSV path");

  // selftest
  std::vector<int> only;
  auto* st = app.add_subcommand("selftest", "run the acceptance suite");
  st->add_option("--only", only, "criterion numbers")->delimiter(',');

  std::vector<std::string> args;
  for (int i = argc - 1; i >= 1; --i) args.emplace_back(argv[i]);
  try {
    std::vector<std::string> fwd(args.rbegin(), args.rend());
    fwd = expand_config(fwd, app);
    args.assign(fwd.rbegin(), fwd.rend());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (threads > 0) set_num_threads(threads);
    Table t;
    const std::string cmd = app.get_subcommands().front()->get_name();
    t.meta = {{"command", cmd}, {"seed", seed}};

    if (cmd == "transform" || cmd == "adjoint") {
      const GridFunction f = load_prgf(in);
      const TransformPlan plan = make_plan(f.spec(), default_tstep(f.spec(), tstep), parse_mode(mode));
      const GridFunction g = cmd == "transform" ? forward_transform(f, plan) : adjoint_transform(f, plan);
      save_prgf(out, g);
      const ExponentPair e(f.dim());
      t.meta["grid"] = grid_meta(f);
      t.meta["plan"] = to_json(PlanConfig{plan.t_step[0], plan.adjoint_mode});
      t.columns = {"quantity", "value"};
      t.add({"input_lp_norm", num(lp_norm(f, e.p))});
      t.add({"output_lq_norm", num(lp_norm(g, e.q))});
      if (cmd == "transform" && !f.is_zero()) t.add({"rayleigh_ratio", num(rayleigh_ratio(f, g))});
      emit(t, table_out);
    } else if (cmd == "norms") {
      const GridFunction f = load_prgf(in);
      const double p = p_exp > 0 ? p_exp : ExponentPair(f.dim()).p;
      t.meta["grid"] = grid_meta(f);
      t.columns = {"quantity", "value"};
      t.add({"lp_norm", num(lp_norm(f, p))});
      t.add({"lorentz_quasinorm", num(lorentz_quasinorm(f, p, r_exp))});
      t.add({"l2_norm", num(l2_norm(f))});
      if (radius >= 0) t.add({"tail_mass", num(tail_mass(f, radius, p))});
      t.meta["p"] = p;
      t.meta["r"] = r_exp;
      emit(t, out);
    } else if (cmd == "decompose") {
      const GridFunction f = load_prgf(in);
      const double p = p_exp > 0 ? p_exp : ExponentPair(f.dim()).p;
      const RoughDecomposition dec = rough_decompose(f);
      t.meta["grid"] = grid_meta(f);
      t.meta["p"] = p;
      t.columns = {"j", "cells", "measure", "score"};
      for (const Level& l : dec.levels())
        t.add({std::to_string(l.j), std::to_string(l.cells.size()), num(dec.measure(l)), num(dec.score(l, p))});
      emit(t, out);
    } else if (cmd == "refine") {
      const GridFunction f = load_prgf(in);
      const double p = p_exp > 0 ? p_exp : ExponentPair(f.dim()).p;
      const auto ref = entropy_refine(f, eta, p, r_exp);
      save_prgf(out, ref.refined);
      t.meta["grid"] = grid_meta(f);
      t.meta["eta"] = eta;
      t.columns = {"kept_level"};
      for (int j : ref.kept_levels) t.add({std::to_string(j)});
      emit(t, table_out);
    } else if (cmd == "symmetry") {
      const GroupElementd phi = element_from_flags(generator, params, dim, element_file);
      t.meta["element"] = to_json(phi);
      json partner = to_json(make_element<double>(phi.partner_L(), phi.partner_u(), phi.t(), phi.partner_a(),
                                                   phi.partner_v(), false));
      t.meta["partner"] = partner;
      t.columns = {"quantity", "value"};
      t.add({"incidence_factor", num(phi.incidence_factor())});
      t.add({"jacobian", num(phi.jacobian())});
      t.add({"partner_jacobian", num(phi.partner_jacobian())});
      t.add({"partner_consistency", num(phi.partner_consistency())});
      t.add({"max_incidence_defect", num(max_incidence_defect(phi, pairs, seed))});
      if (!in.empty()) {
        const GridFunction f = load_prgf(in);
        const auto [plo, phi_hi] = preimage_bounds(phi, f.spec().lo(), f.spec().hi());
        const GridFunction g = pullback(phi, f, GridSpec(plo, phi_hi, f.spec().counts()));
        const double p = ExponentPair(f.dim()).p;
        t.add({"lp_norm_before", num(lp_norm(f, p))});
        t.add({"lp_norm_after", num(lp_norm(g, p))});
        if (!table_out.empty()) save_prgf(table_out, g);
      }
      emit(t, out);
    } else if (cmd == "paraball-dist") {
      const Paraballd a = paraball_from_json(load_json(ball_a));
      const Paraballd b = paraball_from_json(load_json(ball_b));
      const auto terms = quasidistance_terms(a, b);
      t.meta["a"] = to_json(a);
      t.meta["b"] = to_json(b);
      t.columns = {"term", "value"};
      for (std::size_t k = 0; k < terms.size(); ++k) t.add({std::to_string(k + 1), num(terms[k])});
      t.add({"total", num(quasidistance(a, b))});
      emit(t, out);
    } else if (cmd == "partition") {
      const GridFunction f = load_prgf(in);
      const json jb = load_json(balls_file);
      if (!jb.is_array()) throw UsageError("--balls must hold a JSON array");
      std::vector<Paraballd> balls;
      for (const auto& b : jb) balls.push_back(paraball_from_json(b));
      std::vector<bool> F(static_cast<std::size_t>(f.size()));
      for (Index i = 0; i < f.size(); ++i) F[static_cast<std::size_t>(i)] = f[i] > 0;
      const TransformPlan plan = make_plan(f.spec(), default_tstep(f.spec(), tstep));
      const auto part = partition_by_interaction(F, balls, eta, plan);
      t.meta["grid"] = grid_meta(f);
      t.meta["thresholds"] = part.thresholds;
      t.meta["ball_measures"] = part.ball_measures;
      t.meta["set_measure"] = part.set_measure;
      t.columns = {"cell", "part"};
      std::vector<int> label(static_cast<std::size_t>(f.size()), -2);
      for (std::size_t b = 0; b < part.parts.size(); ++b)
        for (Index c : part.parts[b]) label[static_cast<std::size_t>(c)] = static_cast<int>(b);
      for (Index c : part.remainder) label[static_cast<std::size_t>(c)] = -1;
      for (Index c = 0; c < f.size(); ++c)
        if (label[static_cast<std::size_t>(c)] != -2)
          t.add({std::to_string(c), label[static_cast<std::size_t>(c)] < 0 ? "remainder" : std::to_string(label[static_cast<std::size_t>(c)])});
      emit(t, out);
    } else if (cmd == "cover") {
      const GridFunction f = load_prgf(in);
      const TransformPlan plan = make_plan(f.spec(), default_tstep(f.spec(), tstep));
      const CoverResult res = greedy_cover(f, eta, plan, {budget, threshold, seed});
      const double p = ExponentPair(f.dim()).p;
      const double mass = lp_mass(f, p);
      json balls = json::array();
      for (const auto& pc : res.pieces) balls.push_back(to_json(pc.ball));
      t.meta["grid"] = grid_meta(f);
      t.meta["balls"] = balls;
      t.meta["iteration_bound"] = res.iteration_bound;
      t.meta["stopped_by_eta"] = res.stopped_by_eta;
      t.columns = {"piece", "level", "pmass_fraction", "ball_volume"};
      for (std::size_t k = 0; k < res.pieces.size(); ++k)
        t.add({std::to_string(k), std::to_string(res.pieces[k].level), num(lp_mass(res.pieces[k].piece, p) / mass),
               num(res.pieces[k].ball.volume())});
      emit(t, out);
    } else if (cmd == "extremize") {
      if (dim < 2) throw UsageError("--dim must be at least 2");
      if (grid_n < 2) throw UsageError("--grid must be at least 2");
      GridFunction f0;
      GridSpec spec = GridSpec::centered_cube(dim, box / 2, grid_n);
      if (init == "gaussian")
        f0 = gaussian_init(spec, sigma);
      else if (init == "indicator")
        f0 = box_indicator(spec, Vec::Constant(dim, -1.0), Vec::Constant(dim, 1.0));
      else if (init == "file") {
        if (init_file.empty()) throw UsageError("--init file needs --init-file");
        f0 = load_prgf(init_file);
        spec = f0.spec();
      } else
        throw UsageError("--init must be gaussian, indicator or file");
      const TransformPlan plan = make_plan(spec, default_tstep(spec, tstep));
      const ExtremizeTrace trace = extremize(f0, plan, {max_iters, tol, theta});
      std::string final_path = final_out;
      if (final_path.empty()) {
        const std::string base = out.empty() ? std::string("extremize") : out;
        const auto dot = base.rfind('.');
        final_path = (dot == std::string::npos || base.find('/', dot) != std::string::npos ? base : base.substr(0, dot)) + ".prgf";
      }
      save_prgf(final_path, trace.final);
      t.meta["grid"] = to_json(spec);
      t.meta["t_step"] = plan.t_step[0];
      t.meta["theta"] = theta;
      t.meta["A_estimate"] = trace.A_estimate;
      t.meta["converged"] = trace.converged;
      t.meta["final"] = final_path;
      t.columns = {"iter", "phi", "residual", "pnorm"};
      for (const auto& row : trace.rows)
        t.add({std::to_string(row.iter), num(row.phi), num(row.residual), num(1.0 + row.pnorm_drift)});
      emit(t, out);
    } else if (cmd == "affine-measure") {
      const double rel = step > 0 ? step : 1e-4;
      if (samples < 1) throw UsageError("--samples must be positive");
      t.meta["chart"] = chart;
      t.meta["finite_difference"] = fd;
      if (chart == "paraboloid") {
        if (dim < 2) throw UsageError("--dim must be at least 2");
        const auto analytic = paraboloid_chart<double>(dim);
        const auto F = fd ? SurfaceChartd::finite_difference(dim, analytic.lo(), analytic.hi(), paraboloid_map<double>(dim))
                          : analytic;
        const Vec vlo = Vec::Constant(dim - 1, lo), vhi = Vec::Constant(dim - 1, hi);
        t.meta["measure"] = measure(F, vlo, vhi, std::min(nodes, 512));
        t.columns.clear();
        for (int a = 0; a < dim - 1; ++a) t.columns.push_back("u" + std::to_string(a + 1));
        t.columns.push_back("density");
        // density samples along the diagonal of the region
        for (int k = 0; k < samples; ++k) {
          const double s = samples == 1 ? 0.5 : static_cast<double>(k) / (samples - 1);
          const Vec u = vlo + s * (vhi - vlo);
          std::vector<std::string> row;
          for (Index a = 0; a < u.size(); ++a) row.push_back(num(u[a]));
          row.push_back(num(surface_density(F, u)));
          t.add(row);
        }
      } else {
        CurveChartd c = parabola_chart<double>();
        std::function<Vec(double)> plain = parabola_map<double>();
        if (chart == "circle") {
          c = circle_chart<double>();
          plain = [](double s) { return Vec{{std::cos(s), std::sin(s)}}; };
        } else if (chart == "moment") {
          c = moment_curve_chart<double>(dim);
          plain = [d = dim](double s) {
            Vec v(d);
            for (int e = 0; e < d; ++e) v[e] = std::pow(s, e + 1);
            return v;
          };
        } else if (chart == "polynomial") {
          const Vec cv = parse_vec(coeffs);
          std::vector<double> cs(cv.data(), cv.data() + cv.size());
          c = polynomial_graph_chart<double>(cs);
          plain = [cs](double s) {
            double pv = 0;
            for (std::size_t k = cs.size(); k-- > 0;) pv = pv * s + cs[k];
            return Vec{{s, pv}};
          };
        } else if (chart != "parabola")
          throw UsageError("unknown chart '" + chart + "'");
        if (fd) c = CurveChartd::finite_difference(c.dim(), c.lo(), c.hi(), plain, rel);
        t.meta["measure"] = measure(c, lo, hi, nodes);
        t.columns = {"t", "density"};
        for (int k = 0; k < samples; ++k) {
          const double s = samples == 1 ? 0.5 * (lo + hi) : lo + (hi - lo) * k / (samples - 1);
          t.add({num(s), num(arclength_density(c, s))});
        }
      }
      emit(t, out);
    } else if (cmd == "selftest") {
      AcceptanceOptions opts;
      opts.seed = seed;
      opts.only = only;
      const auto results = run_acceptance(opts, &std::cout);
      int failed = 0;
      for (const auto& r : results) failed += r.pass ? 0 : 1;
      std::cout << results.size() - static_cast<std::size_t>(failed) << "/" << results.size() << " criteria passed\n";
      return failed == 0 ? 0 : 1;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
