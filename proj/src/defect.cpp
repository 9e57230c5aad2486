#include "harddisk/defect.hpp"

#include <algorithm>
#include <cstring>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "harddisk/connectivity.hpp"
#include "harddisk/neighbor_grid.hpp"

namespace hd {

namespace {

struct PointHash {
  std::size_t operator()(const Point& p) const {
    std::uint64_t a, b;
    const double x = p.x + 0.0, y = p.y + 0.0;  // fold -0.0 into +0.0
    std::memcpy(&a, &x, 8);
    std::memcpy(&b, &y, 8);
    return std::hash<std::uint64_t>()(a * 0x9E3779B97F4A7C15ull ^ b);
  }
};
using PointSet = std::unordered_set<Point, PointHash>;

PointSet point_set(std::span<const Point> pts) { return PointSet(pts.begin(), pts.end()); }

bool in_any(std::span<const Rect> rects, Point p) {
  return std::any_of(rects.begin(), rects.end(), [&](const Rect& r) { return r.contains(p); });
}

std::string describe(const Rect& r) {
  std::ostringstream os;
  os << std::setprecision(6) << "(" << r.x0 << "," << r.x1 << ")x(" << r.y0 << "," << r.y1 << ")";
  return os.str();
}

}  // namespace

DefectReport defect(const Configuration& xi, const Configuration& xi_prime, std::span<const Rect> domain, double rho,
                    Exec exec) {
  require(!domain.empty(), ErrorKind::invalid_argument, "empty domain list");
  for (std::size_t a = 0; a < domain.size(); ++a)
    for (std::size_t b = a + 1; b < domain.size(); ++b)
      require(!overlaps(domain[a], domain[b]), ErrorKind::invalid_argument, "domain pieces overlap");

  const PointSet prime = point_set(xi_prime.points());
  for (const Point& p : xi.points())
    require(prime.count(p) > 0, ErrorKind::not_superset, "xi is not contained in xi'");

  const NeighborGrid grid(xi_prime.points(), kVoronoiReach);
  for (const Rect& r : domain)
    require(is_saturated(grid, r, rho, 2e-9, exec), ErrorKind::not_saturated,
            "xi' not saturated near " + describe(r));

  const PointSet base = point_set(xi.points());
  std::vector<std::size_t> sites;
  for (std::size_t i = 0; i < xi_prime.size(); ++i)
    if (in_any(domain, xi_prime.points()[i])) sites.push_back(i);

  DefectReport rep;
  rep.domain.assign(domain.begin(), domain.end());
  rep.contributions.resize(sites.size());
  for_each_index(sites.size(), exec, [&](std::size_t k) {
    const VoronoiCell cell = voronoi_cell(grid, sites[k]);
    if (!cell.bounded) throw Error(ErrorKind::unbounded_cell, "cell of a domain site is unbounded");
    DefectTerm& t = rep.contributions[k];
    t.site = cell.site;
    t.cell_area = cell.area;
    t.member = base.count(cell.site) > 0;
    t.term = cell.area - (t.member ? kHexArea : 0.0);
  });
  for (const DefectTerm& t : rep.contributions) rep.total += t.term;
  return rep;
}

nlohmann::json to_json(const DefectReport& r) {
  nlohmann::json dom = nlohmann::json::array();
  for (const Rect& d : r.domain) dom.push_back({d.x0, d.y0, d.x1, d.y1});
  nlohmann::json terms = nlohmann::json::array();
  for (const DefectTerm& t : r.contributions)
    terms.push_back({{"x", t.site.x}, {"y", t.site.y}, {"area", t.cell_area}, {"member", t.member}, {"term", t.term}});
  return {{"domain", dom}, {"total", r.total}, {"contributions", terms}};
}

void write_csv(std::ostream& os, const DefectReport& r) {
  os << "x,y,area,member,term\n" << std::setprecision(17);
  for (const DefectTerm& t : r.contributions)
    os << t.site.x << ',' << t.site.y << ',' << t.cell_area << ',' << (t.member ? 1 : 0) << ',' << t.term << '\n';
}

bool PropertyReport::all_hold() const {
  return std::all_of(checks.begin(), checks.end(), [](const PropertyCheck& c) { return !c.applicable || c.holds; });
}

std::size_t PropertyReport::failures() const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [](const PropertyCheck& c) { return c.applicable && !c.holds; }));
}

namespace {

// A split coordinate near `mid` that no site lies on.
double free_split(std::span<const Point> pts, double mid, bool vertical) {
  double s = mid;
  for (int tries = 0; tries < 64; ++tries) {
    const bool hit = std::any_of(pts.begin(), pts.end(), [&](Point p) { return (vertical ? p.x : p.y) == s; });
    if (!hit) return s;
    s += 1e-7 * (tries + 1);
  }
  return s;
}

Configuration keep_near(const Configuration& c, const Rect& box) {
  std::vector<Point> f, b;
  for (const Point& p : c.free_points())
    if (box.contains_closed(p)) f.push_back(p);
  for (const Point& p : c.boundary_points())
    if (box.contains_closed(p)) b.push_back(p);
  return Configuration(c.domain(), std::move(f), std::move(b));
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

void connectivity_checks(const Configuration& xi, const Rect& D, double total, const DefectPropertyOptions& opt,
                         const std::string& name, PropertyReport& rep) {
  const bool small = total < opt.c;
  std::vector<Point> inside;
  for (const Point& p : xi.points())
    if (D.contains(p)) inside.push_back(p);

  // Connectivity of deep points in G_eps(xi cap D).
  {
    PropertyCheck ck{"connectivity", name, small, true, ""};
    if (small) {
      const EpsGraph g = build_graph(inside, opt.eps, nullptr, Exec::serial);
      long label = -1;
      std::size_t deep = 0;
      for (std::size_t v = 0; v < g.vertices.size(); ++v) {
        if (D.depth(g.vertices[v]) < opt.rho) continue;
        ++deep;
        if (label < 0) label = g.component[v];
        if (static_cast<long>(g.component[v]) != label) ck.holds = false;
      }
      ck.detail = std::to_string(deep) + " deep points";
    }
    rep.checks.push_back(ck);
  }

  // Distance-decreasing step on sampled rays.
  {
    PropertyCheck ck{"distance_decreasing", name, small, true, ""};
    if (small) {
      const NeighborGrid grid(xi.points(), 2.0 + opt.eps);
      const double reach = 2.0 + opt.eps / 2;
      std::size_t probes = 0;
      for (const Point& x : inside) {
        if (D.depth(x) < reach) continue;  // B_{2+eps/2}(x) inside D
        ++probes;
        for (int k = 0; k < opt.rays && ck.holds; ++k) {
          const double th = 2 * kPi * k / opt.rays;
          const Point y = x + (opt.rho + 1.0) * Point{std::cos(th), std::sin(th)};
          const double dxy = dist2(x, y);
          bool found = false;
          grid.for_each_within(x, reach, [&](std::size_t, Point q) {
            if (dist2(x, q) < reach * reach && dist2(q, y) < dxy) found = true;
          });
          if (!found) {
            ck.holds = false;
            ck.detail = "no step from (" + fmt(x.x) + "," + fmt(x.y) + ") toward ray " + std::to_string(k);
          }
        }
      }
      if (ck.holds) ck.detail = std::to_string(probes) + " probe points";
    }
    rep.checks.push_back(ck);
  }

  // Forbidden distances.
  {
    PropertyCheck ck{"forbidden_distances", name, small, true, ""};
    if (small) {
      const double lo = 2 + 0.9 * opt.eps, hi = 2 + opt.eps;
      const NeighborGrid grid(inside, hi);
      std::size_t bad = 0;
      for (std::size_t i = 0; i < inside.size(); ++i)
        grid.for_each_within(inside[i], hi, [&](std::size_t j, Point q) {
          const double d = dist(inside[i], q);
          if (j > i && d >= lo && d <= hi) ++bad;
        });
      ck.holds = bad == 0;
      ck.detail = std::to_string(bad) + " pairs in the forbidden band";
    }
    rep.checks.push_back(ck);
  }
}

}  // namespace

PropertyReport check_defect_properties(const Configuration& xi, const Configuration& xi_prime,
                                       std::span<const Rect> domains, const DefectPropertyOptions& opt, Exec exec) {
  PropertyReport rep;
  const bool axioms = opt.eps <= kEpsilonMax;
  for (const Rect& D : domains) {
    const std::string name = describe(D);
    const DefectReport base = defect(xi, xi_prime, D, opt.rho, exec);
    double scale = 1.0;
    for (const DefectTerm& t : base.contributions) scale += t.cell_area;
    const double tol = opt.rel_tol * scale;
    auto delta = [&](std::span<const Rect> d) { return defect(xi, xi_prime, d, opt.rho, exec).total; };
    auto delta1 = [&](const Rect& r) { return delta(std::span<const Rect>(&r, 1)); };

    rep.checks.push_back({"positivity", name, true, base.total >= -tol, "Delta = " + fmt(base.total)});

    {
      PropertyCheck ck{"monotonicity", name, true, true, ""};
      const Point c = D.center();
      const Rect subs[] = {{D.x0, D.y0, c.x, c.y}, {c.x, D.y0, D.x1, c.y}, {D.x0, c.y, c.x, D.y1},
                           {c.x, c.y, D.x1, D.y1}, Rect::centered(c, 0.75 * D.half_x(), 0.75 * D.half_y())};
      for (const Rect& s : subs) {
        const double v = delta1(s);
        if (v > base.total + tol) {
          ck.holds = false;
          ck.detail = "Delta(" + describe(s) + ") = " + fmt(v) + " > " + fmt(base.total);
        }
      }
      rep.checks.push_back(ck);
    }

    {
      PropertyCheck ck{"additivity", name, true, true, ""};
      for (bool vertical : {true, false}) {
        const double s = free_split(xi_prime.points(), vertical ? D.center().x : D.center().y, vertical);
        const Rect a = vertical ? Rect{D.x0, D.y0, s, D.y1} : Rect{D.x0, D.y0, D.x1, s};
        const Rect b = vertical ? Rect{s, D.y0, D.x1, D.y1} : Rect{D.x0, s, D.x1, D.y1};
        const Rect both[] = {a, b};
        const double da = delta1(a), db = delta1(b), dab = delta(both);
        if (std::fabs(dab - da - db) > tol || std::fabs(dab - base.total) > tol) {
          ck.holds = false;
          ck.detail = "split at " + fmt(s) + ": " + fmt(dab) + " vs " + fmt(da) + " + " + fmt(db);
        }
      }
      rep.checks.push_back(ck);
    }

    {
      // Drop everything that cannot influence cells in D or saturation of
      // its rho-neighbourhood.
      const Rect keep = D.expanded(std::max(opt.rho, 6.0) + 3.0);
      const Configuration xi2 = keep_near(xi, keep), xp2 = keep_near(xi_prime, keep);
      const double v = defect(xi2, xp2, D, opt.rho, exec).total;
      const bool far_edit = xp2.size() < xi_prime.size();
      rep.checks.push_back({"localization", name, far_edit, std::fabs(v - base.total) <= tol,
                            "after removing " + std::to_string(xi_prime.size() - xp2.size()) + " far points: " +
                                fmt(v)});
    }

    if (axioms) {
      PropertyCheck ck{"saturation", name, base.total < opt.c, true, ""};
      if (ck.applicable)
        for (const DefectTerm& t : base.contributions)
          if (!t.member) ck.holds = false;
      rep.checks.push_back(ck);
      connectivity_checks(xi, D, base.total, opt, name, rep);
    }

    if (D.is_square()) {
      const double L = D.half_x();
      std::size_t count = 0;
      for (const Point& p : xi.points()) count += D.contains(p);
      const double bulk = D.area() - kHexArea * static_cast<double>(count);
      const double upper = bulk + kCountingConstant * L;
      const double lower = bulk - kCountingConstant * L;
      rep.checks.push_back({"point_counting", name, true, base.total <= upper + tol,
                            "Delta = " + fmt(base.total) + ", bound " + fmt(upper)});
      rep.checks.push_back({"point_counting_lower", name, true, base.total >= lower - tol,
                            "Delta = " + fmt(base.total) + ", lower bound " + fmt(lower)});
    }
  }
  return rep;
}

double calibrate_c(std::span<const CalibrationProbe> probes, double eps, double rho, double c_init, Exec exec) {
  std::vector<double> limit(probes.size(), c_init);
  for_each_index(probes.size(), exec, [&](std::size_t k) {
    const CalibrationProbe& pr = probes[k];
    const double total = defect(pr.xi, pr.xi_prime, pr.square, rho, Exec::serial).total;
    if (total >= c_init) return;
    DefectPropertyOptions opt;
    opt.eps = eps;
    opt.c = c_init;
    opt.rho = rho;
    PropertyReport r;
    connectivity_checks(pr.xi, pr.square, total, opt, "probe", r);
    for (const PropertyCheck& ck : r.checks)
      if (ck.applicable && !ck.holds && ck.property != "distance_decreasing") limit[k] = total;
  });
  return *std::min_element(limit.begin(), limit.end());
}

std::vector<Point> regular_hexagon(Point center, double area, double angle) {
  // Area of a regular hexagon with circumradius R is (3 sqrt3 / 2) R^2.
  const double R = std::sqrt(2.0 * area / (3.0 * kSqrt3));
  std::vector<Point> h(6);
  for (int k = 0; k < 6; ++k) {
    const double t = angle + k * kPi / 3;
    h[k] = center + R * Point{std::cos(t), std::sin(t)};
  }
  return h;
}

double hexagon_proximity(const VoronoiCell& cell, double resolution) {
  require(cell.bounded, ErrorKind::unbounded_cell, "hexagon proximity needs a bounded cell");
  require(resolution > 0, ErrorKind::invalid_argument, "resolution must be positive");
  auto h = [&](double a) { return hausdorff_convex(cell.polygon, regular_hexagon(cell.site, kHexArea, a)); };
  // Coarse scan over the symmetry period pi/3, then golden-section search
  // around the best bracket down to the requested resolution.
  const int coarse = 120;
  const double step = (kPi / 3) / coarse;
  int best = 0;
  double bestv = h(0);
  for (int k = 1; k < coarse; ++k) {
    const double v = h(k * step);
    if (v < bestv) {
      bestv = v;
      best = k;
    }
  }
  const double g = (std::sqrt(5.0) - 1) / 2;
  double a = (best - 1) * step, b = (best + 1) * step;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = h(c), fd = h(d);
  while (b - a > resolution) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = h(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = h(d);
    }
  }
  return std::min({bestv, fc, fd});
}

}  // namespace hd
