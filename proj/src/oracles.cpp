#include "harddisk/oracles.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "harddisk/error.hpp"
#include "harddisk/stats.hpp"

namespace hd {

bool UpwardClosedFamily::contains(std::uint32_t x) const {
  return std::binary_search(members.begin(), members.end(), x);
}

bool UpwardClosedFamily::is_upward_closed() const {
  for (std::uint32_t x : members)
    for (int i = 0; i < ground; ++i)
      if (!contains(x | (1u << i))) return false;
  return true;
}

UpwardClosedFamily UpwardClosedFamily::closure(int ground, std::span<const std::uint32_t> generators) {
  require(ground >= 0 && ground <= 20, ErrorKind::invalid_argument, "ground set must have at most 20 elements");
  UpwardClosedFamily f{ground, {}};
  const std::uint32_t all = (1u << ground) - 1;
  for (std::uint32_t x = 0; x <= all; ++x)
    for (std::uint32_t g : generators)
      if ((g & x) == g && (g & ~all) == 0) {
        f.members.push_back(x);
        break;
      }
  return f;
}

UpwardClosedFamily UpwardClosedFamily::random(int ground, RngStream& rng) {
  const std::size_t k = rng.below(4);
  std::vector<std::uint32_t> gens;
  for (std::size_t i = 0; i < k; ++i) {
    std::uint32_t g = 0;
    for (int b = 0; b < ground; ++b)
      if (rng.bernoulli(0.4)) g |= 1u << b;
    gens.push_back(g);
  }
  return closure(ground, gens);
}

std::vector<UpwardClosedFamily> UpwardClosedFamily::all(int ground) {
  require(ground >= 0 && ground <= 4, ErrorKind::invalid_argument, "enumeration limited to 4 elements");
  const std::uint32_t subsets = 1u << ground;
  std::vector<UpwardClosedFamily> out;
  for (std::uint64_t code = 0; code < (1ull << subsets); ++code) {
    bool ok = true;
    for (std::uint32_t x = 0; x < subsets && ok; ++x) {
      if (!((code >> x) & 1)) continue;
      for (int i = 0; i < ground; ++i)
        if (!((code >> (x | (1u << i))) & 1)) ok = false;
    }
    if (!ok) continue;
    UpwardClosedFamily f{ground, {}};
    for (std::uint32_t x = 0; x < subsets; ++x)
      if ((code >> x) & 1) f.members.push_back(x);
    out.push_back(std::move(f));
  }
  return out;
}

IndexEliminationResult index_elimination_check(std::uint32_t J, std::span<const double> a,
                                               const UpwardClosedFamily& family) {
  const int n = family.ground;
  require(n >= 0 && n <= 20 && static_cast<int>(a.size()) == n, ErrorKind::invalid_argument,
          "weights must match a ground set of at most 20");
  const std::uint32_t all = (1u << n) - 1;
  require((J & ~all) == 0, ErrorKind::invalid_argument, "J must be a subset of I");
  for (double v : a) require(v >= 0 && v <= 1, ErrorKind::invalid_argument, "weights must lie in [0, 1]");
  require(family.is_upward_closed(), ErrorKind::not_upward_closed, "family is not closed under supersets");
  auto weight = [&](std::uint32_t X, std::uint32_t over) {
    double w = 1.0;
    for (int i = 0; i < n; ++i) {
      if (!((over >> i) & 1)) continue;
      w *= ((X >> i) & 1) ? a[static_cast<std::size_t>(i)] : 1.0 - a[static_cast<std::size_t>(i)];
    }
    return w;
  };
  IndexEliminationResult r;
  for (std::uint32_t X : family.members) {
    r.rhs += weight(X, all);
    if ((X & ~J) == 0) r.lhs += weight(X, J);
  }
  r.holds = r.lhs <= r.rhs + 1e-12;
  return r;
}

Configuration triangular_packing(double L, double spacing) {
  require(spacing > 2, ErrorKind::invalid_argument, "spacing must exceed 2");
  require(L > 0, ErrorKind::invalid_argument, "L must be positive");
  const Rect q = Rect::square(L);
  return Configuration(q, triangular_lattice(q, spacing));
}

double packing_deficit_constant(double L, std::size_t count) {
  return ((2 * L) * (2 * L) / kHexArea - static_cast<double>(count)) / L;
}

namespace {

double overlap(double a0, double a1, double b0, double b1, double shift) {
  return std::max(0.0, std::min(a1, b1 - shift) - std::max(a0, b0 - shift));
}

// Integral over the disk |z| <= 2 of the overlap product, trapezoid in angle
// (periodic) and midpoint in radius.
double near_pairs(std::span<const Rect> d, int nr, int nt) {
  double total = 0.0;
  const double dr = 2.0 / nr, dt = 2 * kPi / nt;
  for (int i = 0; i < nr; ++i) {
    const double r = (i + 0.5) * dr;
    double ring = 0.0;
    for (int k = 0; k < nt; ++k) {
      const double t = k * dt;
      const double zx = r * std::cos(t), zy = r * std::sin(t);
      for (const Rect& a : d)
        for (const Rect& b : d)
          ring += overlap(a.x0, a.x1, b.x0, b.x1, zx) * overlap(a.y0, a.y1, b.y0, b.y1, zy);
    }
    total += ring * dt * r * dr;
  }
  return total;
}

double area_of(std::span<const Rect> d) {
  double a = 0.0;
  for (const Rect& r : d) a += r.area();
  return a;
}

}  // namespace

Quadrature exact_two_point_acceptance(std::span<const Rect> domain, int radial, int angular) {
  require(!domain.empty() && radial >= 2 && angular >= 4, ErrorKind::invalid_argument, "empty domain or grid");
  for (std::size_t i = 0; i < domain.size(); ++i)
    for (std::size_t j = i + 1; j < domain.size(); ++j)
      require(!overlaps(domain[i], domain[j]), ErrorKind::invalid_argument, "domain rectangles must be disjoint");
  // no pair can be farther apart than the bounding box diagonal
  Rect box = domain.front();
  for (const Rect& r : domain) box = {std::min(box.x0, r.x0), std::min(box.y0, r.y0), std::max(box.x1, r.x1),
                                      std::max(box.y1, r.y1)};
  if (box.width() * box.width() + box.height() * box.height() <= 4.0) return {};
  const double area = area_of(domain);
  const double coarse = near_pairs(domain, radial, angular);
  const double fine = near_pairs(domain, 2 * radial, 2 * angular);
  const double extrapolated = (4 * fine - coarse) / 3;
  Quadrature q;
  q.value = std::max(0.0, area * area - extrapolated);
  q.error = std::fabs(extrapolated - fine);
  return q;
}

McEstimate monte_carlo_two_point_acceptance(std::span<const Rect> domain, RngStream& rng, std::size_t draws) {
  require(!domain.empty() && draws > 0, ErrorKind::invalid_argument, "empty domain or no draws");
  const double area = area_of(domain);
  auto draw = [&]() {
    double u = rng.uniform() * area;
    for (const Rect& r : domain) {
      if (u < r.area()) return rng.uniform_in(r);
      u -= r.area();
    }
    return rng.uniform_in(domain.back());
  };
  std::size_t hits = 0;
  for (std::size_t i = 0; i < draws; ++i) {
    const Point x = draw(), y = draw();
    hits += dist2(x, y) > 4.0;
  }
  const double f = static_cast<double>(hits) / static_cast<double>(draws);
  return {f * area * area, bernoulli_se(f, draws) * area * area};
}

double min_distance_bruteforce(std::span<const Point> points) {
  require(points.size() >= 2, ErrorKind::degenerate_input, "need at least two points");
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j) best = std::min(best, dist2(points[i], points[j]));
  return std::sqrt(best);
}

std::vector<std::uint32_t> components_bruteforce(std::span<const Point> points, double eps) {
  const std::size_t n = points.size();
  const double r2 = (2 + eps) * (2 + eps);
  std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) reach[i][j] = i == j || dist2(points[i], points[j]) <= r2;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (reach[i][k])
        for (std::size_t j = 0; j < n; ++j) reach[i][j] = reach[i][j] || reach[k][j];
  std::vector<std::uint32_t> label(n, std::numeric_limits<std::uint32_t>::max());
  std::uint32_t next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (label[i] != std::numeric_limits<std::uint32_t>::max()) continue;
    for (std::size_t j = i; j < n; ++j)
      if (reach[i][j]) label[j] = next;
    ++next;
  }
  return label;
}

double winding_by_angles(std::span<const Point> cycle, Point center) {
  double total = 0.0;
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    const Point a = cycle[i] - center, b = cycle[(i + 1) % cycle.size()] - center;
    total += std::atan2(cross(a, b), dot(a, b));
  }
  return total / (2 * kPi);
}

double max_empty_circle_bruteforce(std::span<const Point> sites, const Rect& region) {
  require(!sites.empty(), ErrorKind::degenerate_input, "need at least one site");
  auto nearest = [&](Point p) {
    double best = std::numeric_limits<double>::infinity();
    for (const Point& s : sites) best = std::min(best, dist2(p, s));
    return std::sqrt(best);
  };
  auto inside = [&](Point p) {
    const double t = 1e-9;
    return p.x >= region.x0 - t && p.x <= region.x1 + t && p.y >= region.y0 - t && p.y <= region.y1 + t;
  };
  double best = 0.0;
  const Point corners[4] = {{region.x0, region.y0}, {region.x1, region.y0}, {region.x1, region.y1}, {region.x0, region.y1}};
  for (const Point& c : corners) best = std::max(best, nearest(c));
  const std::size_t n = sites.size();
  // Circumcentres of triples.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        const Point a = sites[i], b = sites[j], c = sites[k];
        const double d = 2 * cross(b - a, c - a);
        if (std::fabs(d) < 1e-14) continue;
        const double ba = norm2(b - a), ca = norm2(c - a);
        const Point u{((c.y - a.y) * ba - (b.y - a.y) * ca) / d, ((b.x - a.x) * ca - (c.x - a.x) * ba) / d};
        const Point p = a + u;
        if (inside(p)) best = std::max(best, nearest(p));
      }
  // Bisectors of pairs against the four sides.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const Point a = sites[i], b = sites[j];
      const Point m = 0.5 * (a + b), dir{-(b.y - a.y), b.x - a.x};
      for (double x : {region.x0, region.x1})
        if (std::fabs(dir.x) > 1e-14) {
          const Point p{x, m.y + (x - m.x) * dir.y / dir.x};
          if (inside(p)) best = std::max(best, nearest(p));
        }
      for (double y : {region.y0, region.y1})
        if (std::fabs(dir.y) > 1e-14) {
          const Point p{m.x + (y - m.y) * dir.x / dir.y, y};
          if (inside(p)) best = std::max(best, nearest(p));
        }
    }
  return best;
}

bool mn_crossing_bruteforce(const SiteSet& sites, int M, int N) {
  require(M > 0 && M <= N, ErrorKind::invalid_argument, "need 0 < M <= N");
  if (sites.N() < N) return false;
  std::vector<Site> v;
  for (const Site& s : sites.sites())
    if (linf(s) <= N) v.push_back(s);
  const std::size_t n = v.size();
  std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      reach[i][j] = i == j || std::abs(v[i].x - v[j].x) + std::abs(v[i].y - v[j].y) == 1;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (reach[i][k])
        for (std::size_t j = 0; j < n; ++j) reach[i][j] = reach[i][j] || reach[k][j];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (linf(v[i]) == M && linf(v[j]) == N && reach[i][j]) return true;
  return false;
}

}  // namespace hd
