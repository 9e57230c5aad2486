#pragma once

#include <iosfwd>
#include <string>

#include "harddisk/geometry.hpp"
#include "json.hpp"

namespace hd {

// {domain: {L, cx, cy}, free: [[x,y],...], boundary: [[x,y],...]}; a
// non-square domain is written as {hx, hy, cx, cy}.
nlohmann::json to_json(const Configuration& c);
Configuration configuration_from_json(const nlohmann::json& j);
nlohmann::json rect_to_json(const Rect& r);
Rect rect_from_json(const nlohmann::json& j);

// Rows "x,y,kind" with kind free|boundary, preceded by a header.
void write_csv(std::ostream& os, const Configuration& c);

Configuration load_configuration(const std::string& path);
void save_configuration(const std::string& path, const Configuration& c);

}  // namespace hd
