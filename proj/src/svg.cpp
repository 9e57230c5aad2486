#include "harddisk/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hd {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

}  // namespace

std::string render_configuration_svg(const Configuration& c, const SvgStyle& style) {
  Rect view = c.domain();
  for (const Point& p : c.points()) {
    view.x0 = std::min(view.x0, p.x - 1);
    view.y0 = std::min(view.y0, p.y - 1);
    view.x1 = std::max(view.x1, p.x + 1);
    view.y1 = std::max(view.y1, p.y + 1);
  }
  const double s = style.scale;
  auto X = [&](double x) { return (x - view.x0) * s; };
  auto Y = [&](double y) { return (view.y1 - y) * s; };
  std::ostringstream o;
  o.precision(6);
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << view.width() * s << "\" height=\"" << view.height() * s
    << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  auto frame = [&](const Rect& r, const char* color) {
    o << "<rect x=\"" << X(r.x0) << "\" y=\"" << Y(r.y1) << "\" width=\"" << r.width() * s << "\" height=\""
      << r.height() * s << "\" fill=\"none\" stroke=\"" << color << "\"/>\n";
  };
  frame(c.domain(), "black");
  for (const Rect& r : style.frames) frame(r, "#888888");
  if (style.edges_eps) {
    const EpsGraph g = build_graph(c, *style.edges_eps, nullptr, Exec::serial);
    for (const auto& [a, b] : g.edges)
      o << "<line x1=\"" << X(g.vertices[a].x) << "\" y1=\"" << Y(g.vertices[a].y) << "\" x2=\"" << X(g.vertices[b].x)
        << "\" y2=\"" << Y(g.vertices[b].y) << "\" stroke=\"#bbbbbb\"/>\n";
  }
  const auto pts = c.points();
  for (std::size_t i = 0; i < pts.size(); ++i)
    o << "<circle cx=\"" << X(pts[i].x) << "\" cy=\"" << Y(pts[i].y) << "\" r=\"" << s << "\" fill=\""
      << (c.is_free(i) ? "#9ecae1" : "#d9d9d9") << "\" stroke=\"#333333\" stroke-width=\"0.5\"/>\n";
  if (!style.highlight_path.empty()) {
    o << "<polyline fill=\"none\" stroke=\"#d62728\" stroke-width=\"2\" points=\"";
    for (const Point& p : style.highlight_path) o << X(p.x) << ',' << Y(p.y) << ' ';
    if (style.close_path) o << X(style.highlight_path[0].x) << ',' << Y(style.highlight_path[0].y);
    o << "\"/>\n";
  }
  o << "</svg>\n";
  return o.str();
}

std::string render_plot_svg(const std::vector<Series>& series, const std::string& x_label, const std::string& y_label,
                            bool log_x) {
  const double W = 640, H = 420, m = 60;
  double x0 = INFINITY, x1 = -INFINITY, y0 = 0, y1 = 1;
  auto tx = [&](double x) { return log_x ? std::log10(x) : x; };
  for (const Series& s : series)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      x0 = std::min(x0, tx(s.x[i]));
      x1 = std::max(x1, tx(s.x[i]));
      y0 = std::min(y0, s.lo.empty() ? s.y[i] : s.lo[i]);
      y1 = std::max(y1, s.hi.empty() ? s.y[i] : s.hi[i]);
    }
  if (!(x1 > x0)) {
    x0 -= 1;
    x1 += 1;
  }
  auto X = [&](double x) { return m + (tx(x) - x0) / (x1 - x0) * (W - 2 * m); };
  auto Y = [&](double y) { return H - m - (y - y0) / (y1 - y0) * (H - 2 * m); };
  std::ostringstream o;
  o.precision(6);
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n"
    << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    << "<line x1=\"" << m << "\" y1=\"" << H - m << "\" x2=\"" << W - m << "\" y2=\"" << H - m << "\" stroke=\"black\"/>\n"
    << "<line x1=\"" << m << "\" y1=\"" << m << "\" x2=\"" << m << "\" y2=\"" << H - m << "\" stroke=\"black\"/>\n"
    << "<text x=\"" << W / 2 << "\" y=\"" << H - 15 << "\" text-anchor=\"middle\">" << x_label << "</text>\n"
    << "<text x=\"15\" y=\"" << H / 2 << "\" transform=\"rotate(-90 15 " << H / 2 << ")\" text-anchor=\"middle\">"
    << y_label << "</text>\n"
    << "<text x=\"" << m - 5 << "\" y=\"" << Y(y0) << "\" text-anchor=\"end\">" << y0 << "</text>\n"
    << "<text x=\"" << m - 5 << "\" y=\"" << Y(y1) << "\" text-anchor=\"end\">" << y1 << "</text>\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    const Series& s = series[k];
    const char* col = kPalette[k % 6];
    o << "<polyline fill=\"none\" stroke=\"" << col << "\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) o << X(s.x[i]) << ',' << Y(s.y[i]) << ' ';
    o << "\"/>\n";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      o << "<circle cx=\"" << X(s.x[i]) << "\" cy=\"" << Y(s.y[i]) << "\" r=\"3\" fill=\"" << col << "\"/>\n";
      if (!s.lo.empty())
        o << "<line x1=\"" << X(s.x[i]) << "\" y1=\"" << Y(s.lo[i]) << "\" x2=\"" << X(s.x[i]) << "\" y2=\""
          << Y(s.hi[i]) << "\" stroke=\"" << col << "\"/>\n";
      o << "<text x=\"" << X(s.x[i]) << "\" y=\"" << H - m + 15 << "\" text-anchor=\"middle\" font-size=\"10\">"
        << s.x[i] << "</text>\n";
    }
    o << "<text x=\"" << W - m << "\" y=\"" << m + 15 * k << "\" fill=\"" << col << "\" text-anchor=\"end\">" << s.label
      << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

}  // namespace hd
