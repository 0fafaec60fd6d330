#pragma once

#include "pararadon/grid.hpp"
#include "pararadon/paraball.hpp"
#include "pararadon/symmetry.hpp"
#include "pararadon/transform.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>

namespace pararadon {

using json = nlohmann::json;

/// PRGF1: one JSON header line, a newline, then row-major little-endian doubles.
void write_prgf(std::ostream& os, const GridFunction& f);
GridFunction read_prgf(std::istream& is);
void save_prgf(const std::string& path, const GridFunction& f);
GridFunction load_prgf(const std::string& path);

/// CSV with columns x1,x2,value (two-dimensional grids only).
void write_csv(std::ostream& os, const GridFunction& f);

json to_json(const GridSpec& spec);
GridSpec grid_spec_from_json(const json& j);

json to_json(const GroupElementd& phi);
GroupElementd group_element_from_json(const json& j);

json to_json(const Paraballd& ball);
Paraballd paraball_from_json(const json& j);

/// {"t_step":..,"adjoint_mode":"discrete"|"continuum"}
struct PlanConfig {
  double t_step = 0.0;
  AdjointMode adjoint_mode = AdjointMode::Discrete;
};
PlanConfig plan_config_from_json(const json& j);
json to_json(const PlanConfig& cfg);

json load_json(const std::string& path);

}  // namespace pararadon
