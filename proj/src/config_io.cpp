#include "harddisk/config_io.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>

namespace hd {

using nlohmann::json;

json rect_to_json(const Rect& r) {
  const Point c = r.center();
  if (r.is_square()) return {{"L", r.half_x()}, {"cx", c.x}, {"cy", c.y}};
  return {{"hx", r.half_x()}, {"hy", r.half_y()}, {"cx", c.x}, {"cy", c.y}};
}

Rect rect_from_json(const json& j) {
  const Point c{j.value("cx", 0.0), j.value("cy", 0.0)};
  if (j.contains("L")) return Rect::square(j.at("L").get<double>(), c);
  require(j.contains("hx") && j.contains("hy"), ErrorKind::io, "domain needs L or hx/hy");
  return Rect::centered(c, j.at("hx").get<double>(), j.at("hy").get<double>());
}

namespace {
json points_json(std::span<const Point> pts) {
  json a = json::array();
  for (const Point& p : pts) a.push_back({p.x, p.y});
  return a;
}
std::vector<Point> points_from(const json& a) {
  std::vector<Point> out;
  for (const auto& e : a) {
    require(e.is_array() && e.size() == 2, ErrorKind::io, "point must be [x, y]");
    out.push_back({e[0].get<double>(), e[1].get<double>()});
  }
  return out;
}
}  // namespace

json to_json(const Configuration& c) {
  return {{"domain", rect_to_json(c.domain())},
          {"free", points_json(c.free_points())},
          {"boundary", points_json(c.boundary_points())}};
}

Configuration configuration_from_json(const json& j) {
  try {
    return Configuration(rect_from_json(j.at("domain")), points_from(j.value("free", json::array())),
                         points_from(j.value("boundary", json::array())));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::io, e.what());
  }
}

void write_csv(std::ostream& os, const Configuration& c) {
  os << "x,y,kind\n" << std::setprecision(17);
  for (const Point& p : c.free_points()) os << p.x << ',' << p.y << ",free\n";
  for (const Point& p : c.boundary_points()) os << p.x << ',' << p.y << ",boundary\n";
}

Configuration load_configuration(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorKind::io, "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::io, path + ": " + e.what());
  }
  return configuration_from_json(j);
}

void save_configuration(const std::string& path, const Configuration& c) {
  std::ofstream out(path);
  require(static_cast<bool>(out), ErrorKind::io, "cannot write " + path);
  out << to_json(c).dump(1) << '\n';
}

}  // namespace hd
