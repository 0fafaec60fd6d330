#include "pararadon/io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace pararadon {

namespace {

static_assert(std::endian::native == std::endian::little || std::endian::native == std::endian::big);

std::uint64_t to_little(std::uint64_t bits) {
  if constexpr (std::endian::native == std::endian::little) return bits;
  std::uint64_t out = 0;
  for (int i = 0; i < 8; ++i) out |= ((bits >> (8 * i)) & 0xffu) << (8 * (7 - i));
  return out;
}

Vec vec_from_json(const json& j) {
  if (!j.is_array()) throw std::runtime_error("expected a numeric array");
  Vec v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Index>(i)] = j[i].get<double>();
  return v;
}

json vec_to_json(const Vec& v) {
  json j = json::array();
  for (Index i = 0; i < v.size(); ++i) j.push_back(v[i]);
  return j;
}

// rows of the JSON array become rows of the matrix
Eigen::MatrixXd mat_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw std::runtime_error("expected a nested numeric array");
  const auto rows = static_cast<Index>(j.size());
  const auto cols = static_cast<Index>(j[0].size());
  Eigen::MatrixXd m(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols) throw std::runtime_error("ragged matrix");
    for (Index c = 0; c < cols; ++c) m(r, c) = row[static_cast<std::size_t>(c)].get<double>();
  }
  return m;
}

json mat_to_json(const Eigen::MatrixXd& m) {
  json j = json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    j.push_back(row);
  }
  return j;
}

void reject_unknown(const json& j, std::initializer_list<const char*> keys, const char* what) {
  if (!j.is_object()) throw std::runtime_error(std::string(what) + ": expected a JSON object");
  for (const auto& [k, _] : j.items()) {
    bool ok = false;
    for (const char* key : keys) ok = ok || k == key;
    if (!ok) throw std::runtime_error(std::string(what) + ": unknown key '" + k + "'");
  }
}

}  // namespace

json to_json(const GridSpec& spec) {
  json bounds = json::array();
  json counts = json::array();
  for (int a = 0; a < spec.dim(); ++a) {
    bounds.push_back({spec.lo()[a], spec.hi()[a]});
    counts.push_back(spec.count(a));
  }
  return {{"dim", spec.dim()}, {"bounds", bounds}, {"counts", counts}};
}

GridSpec grid_spec_from_json(const json& j) {
  const int dim = j.at("dim").get<int>();
  const json& bounds = j.at("bounds");
  const json& counts = j.at("counts");
  if (static_cast<int>(bounds.size()) != dim || static_cast<int>(counts.size()) != dim)
    throw std::runtime_error("grid header: dim does not match bounds/counts");
  Vec lo(dim), hi(dim);
  std::vector<Index> n(static_cast<std::size_t>(dim));
  for (int a = 0; a < dim; ++a) {
    const auto ua = static_cast<std::size_t>(a);
    lo[a] = bounds[ua].at(0).get<double>();
    hi[a] = bounds[ua].at(1).get<double>();
    n[ua] = counts[ua].get<Index>();
  }
  return GridSpec(lo, hi, n);
}

void write_prgf(std::ostream& os, const GridFunction& f) {
  json header = to_json(f.spec());
  header["magic"] = "PRGF1";
  os << header.dump() << '\n';
  const auto& values = f.values();
  for (Index i = 0; i < values.size(); ++i) {
    const std::uint64_t bits = to_little(std::bit_cast<std::uint64_t>(values[i]));
    char buf[8];
    std::memcpy(buf, &bits, 8);
    os.write(buf, 8);
  }
  if (!os) throw std::runtime_error("PRGF1: write failed");
}

GridFunction read_prgf(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("PRGF1: missing header");
  const json header = json::parse(line);
  if (header.value("magic", "") != "PRGF1") throw std::runtime_error("PRGF1: bad magic");
  const GridSpec spec = grid_spec_from_json(header);
  Eigen::ArrayXd values(spec.size());
  for (Index i = 0; i < spec.size(); ++i) {
    char buf[8];
    if (!is.read(buf, 8)) throw std::runtime_error("PRGF1: truncated payload");
    std::uint64_t bits;
    std::memcpy(&bits, buf, 8);
    values[i] = std::bit_cast<double>(to_little(bits));
  }
  return GridFunction(spec, std::move(values));
}

void save_prgf(const std::string& path, const GridFunction& f) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_prgf(os, f);
}

GridFunction load_prgf(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open '" + path + "'");
  return read_prgf(is);
}

void write_csv(std::ostream& os, const GridFunction& f) {
  if (f.dim() != 2) throw std::invalid_argument("CSV export needs a two-dimensional grid");
  const auto old = os.precision(17);
  os << "x1,x2,value\n";
  for (Index i = 0; i < f.size(); ++i) {
    const Vec x = f.spec().midpoint(i);
    os << x[0] << ',' << x[1] << ',' << f[i] << '\n';
  }
  os.precision(old);
}

json to_json(const GroupElementd& phi) {
  return {{"L", mat_to_json(phi.L())}, {"u", vec_to_json(phi.u())}, {"t", phi.t()}, {"a", phi.a()},
          {"v", vec_to_json(phi.v())}};
}

GroupElementd group_element_from_json(const json& j) {
  reject_unknown(j, {"L", "u", "t", "a", "v"}, "group element");
  return make_element<double>(mat_from_json(j.at("L")), vec_from_json(j.at("u")), j.at("t").get<double>(),
                              j.at("a").get<double>(), vec_from_json(j.at("v")));
}

json to_json(const Paraballd& ball) {
  // basis vectors are emitted one per row
  return {{"base", vec_to_json(ball.base())},   {"apex", vec_to_json(ball.apex())},
          {"basis", mat_to_json(ball.basis().transpose())}, {"radii", vec_to_json(ball.radii())},
          {"rho", ball.rho()},                   {"sign", ball.sign()}};
}

Paraballd paraball_from_json(const json& j) {
  reject_unknown(j, {"base", "apex", "basis", "radii", "rho", "sign"}, "paraball");
  const Vec base = vec_from_json(j.at("base"));
  const Vec apex = vec_from_json(j.at("apex"));
  const Index m = base.size() - 1;
  Eigen::MatrixXd basis = j.contains("basis") ? Eigen::MatrixXd(mat_from_json(j.at("basis")).transpose())
                                              : Eigen::MatrixXd::Identity(m, m);
  const Vec radii = j.contains("radii") ? vec_from_json(j.at("radii")) : Vec::Ones(m);
  return Paraballd(base, apex, basis, radii, j.value("rho", 1.0), j.value("sign", 1));
}

PlanConfig plan_config_from_json(const json& j) {
  reject_unknown(j, {"t_step", "adjoint_mode"}, "plan");
  PlanConfig cfg;
  cfg.t_step = j.value("t_step", 0.0);
  const std::string mode = j.value("adjoint_mode", "discrete");
  if (mode == "discrete")
    cfg.adjoint_mode = AdjointMode::Discrete;
  else if (mode == "continuum")
    cfg.adjoint_mode = AdjointMode::Continuum;
  else
    throw std::runtime_error("plan: adjoint_mode must be 'discrete' or 'continuum'");
  return cfg;
}

json to_json(const PlanConfig& cfg) {
  return {{"t_step", cfg.t_step},
          {"adjoint_mode", cfg.adjoint_mode == AdjointMode::Discrete ? "discrete" : "continuum"}};
}

json load_json(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open '" + path + "'");
  return json::parse(is);
}

}  // namespace pararadon
