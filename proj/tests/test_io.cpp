#include "pararadon/io.hpp"

#include <doctest.h>

#include <cstring>
#include <random>
#include <sstream>

using namespace pararadon;

TEST_CASE("PRGF1 round trip is lossless") {
  std::mt19937_64 rng(31);
  std::normal_distribution<double> n(0, 1e3);
  const GridSpec s(Vec{{-1.25, 0.0, 3.0}}, Vec{{2.0, 1.0 / 3.0, 4.5}}, {5, 7, 3});
  Eigen::ArrayXd v(s.size());
  for (Index i = 0; i < v.size(); ++i) v[i] = std::abs(n(rng));
  v[0] = -0.0;
  v[1] = 5e-324;
  const GridFunction f(s, v);
  std::stringstream ss;
  write_prgf(ss, f);
  const auto g = read_prgf(ss);
  CHECK(g.spec() == s);
  CHECK(std::memcmp(g.values().data(), v.data(), sizeof(double) * static_cast<std::size_t>(v.size())) == 0);

  std::stringstream bad("{\"magic\":\"nope\"}\n");
  CHECK_THROWS(read_prgf(bad));
  std::stringstream truncated;
  write_prgf(truncated, f);
  std::string text = truncated.str();
  text.resize(text.size() - 8);
  std::stringstream cut(text);
  CHECK_THROWS(read_prgf(cut));
}

TEST_CASE("json conversions") {
  const GroupElementd phi(Eigen::MatrixXd{{1.5, 0.2}, {0.1, 0.9}}, Vec{{0.3, -1.0}}, -2.0, 0.75, Vec{{1.0, 2.0}});
  const auto back = group_element_from_json(json::parse(to_json(phi).dump()));
  CHECK(back.L() == phi.L());
  CHECK(back.u() == phi.u());
  CHECK(back.v() == phi.v());
  CHECK(back.t() == phi.t());
  CHECK(back.a() == phi.a());

  const auto B = Paraballd::unit(3).dual();
  const auto Bj = paraball_from_json(to_json(B));
  CHECK(Bj.sign() == -1);
  CHECK(Bj.radii() == B.radii());
  CHECK(Bj.base() == B.base());

  const auto minimal = paraball_from_json(json::parse(R"({"base":[0,1],"apex":[0,1],"rho":2})"));
  CHECK(minimal.radii()[0] == 1.0);
  CHECK(minimal.rho() == 2.0);
  CHECK_THROWS(paraball_from_json(json::parse(R"({"base":[0,1],"apex":[0,1],"rho":2,"colour":3})")));

  const GridSpec s(Vec{{-1.0, 0.0}}, Vec{{1.0, 2.0}}, {8, 4});
  CHECK(grid_spec_from_json(to_json(s)) == s);
  const auto cfg = plan_config_from_json(json::parse(R"({"t_step":0.01,"adjoint_mode":"continuum"})"));
  CHECK(cfg.t_step == 0.01);
  CHECK(cfg.adjoint_mode == AdjointMode::Continuum);
  CHECK_THROWS(plan_config_from_json(json::parse(R"({"adjoint_mode":"sideways"})")));
}

TEST_CASE("csv output") {
  const GridSpec s(Vec{{0.0, 0.0}}, Vec{{1.0, 1.0}}, {2, 2});
  std::stringstream ss;
  write_csv(ss, GridFunction(s, Eigen::ArrayXd::LinSpaced(4, 1, 4)));
  std::string header, first;
  std::getline(ss, header);
  std::getline(ss, first);
  CHECK(header == "x1,x2,value");
  CHECK(first.rfind("0.25,0.25,1", 0) == 0);
  const GridSpec s3(Vec::Zero(3), Vec::Ones(3), {2, 2, 2});
  std::stringstream s3s;
  CHECK_THROWS(write_csv(s3s, GridFunction::zeros(s3)));
}
