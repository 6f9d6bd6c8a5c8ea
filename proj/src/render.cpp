#include "trop/render.hpp"

#include <algorithm>
#include <sstream>

namespace trop {

namespace {

const char* const palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

Rational lattice_norm(Vec2 v) { return Rational(static_cast<long>(std::abs(v.x) + std::abs(v.y))); }

}  // namespace

std::string render_svg(const std::vector<RenderedCurve>& curves, const PointConfiguration& points) {
  std::vector<Embedding> embeddings;
  for (const auto& c : curves) embeddings.push_back(realize(c.type, c.coords));

  std::vector<Point2> box_points = points;
  for (const auto& e : embeddings) box_points.insert(box_points.end(), e.vertices.begin(), e.vertices.end());
  if (box_points.empty()) box_points.push_back({0, 0});
  Rational x0 = box_points[0].x, x1 = x0, y0 = box_points[0].y, y1 = y0;
  for (const Point2& p : box_points) {
    x0 = std::min(x0, p.x);
    x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y);
    y1 = std::max(y1, p.y);
  }
  Rational span = std::max<Rational>(x1 - x0, y1 - y0);
  if (sgn(span) == 0) span = 1;
  // Pad by 20% of the larger side and centre the smaller one.
  const Rational pad = span / 5;
  const Rational side = span + 2 * pad;
  const Rational left = (x0 + x1) / 2 - side / 2;
  const Rational top = (y0 + y1) / 2 + side / 2;
  const Rational scale = Rational(1000) / side;

  auto sx = [&](const Rational& x) { return to_decimal((x - left) * scale, 2); };
  auto sy = [&](const Rational& y) { return to_decimal((top - y) * scale, 2); };
  auto along = [](const Point2& p, Vec2 d, const Rational& t) {
    return Point2{p.x + t * static_cast<long>(d.x), p.y + t * static_cast<long>(d.y)};
  };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"600\" height=\"600\" viewBox=\"0 0 1000 1000\">\n"
     << "<rect x=\"0\" y=\"0\" width=\"1000\" height=\"1000\" fill=\"white\"/>\n";
  for (std::size_t i = 0; i < embeddings.size(); ++i) {
    const Embedding& e = embeddings[i];
    const char* colour = palette[i % (sizeof(palette) / sizeof(palette[0]))];
    os << "<g stroke=\"" << colour << "\" fill=\"" << colour << "\" stroke-width=\"3\">\n";
    for (const auto& s : e.segments) {
      os << "<line x1=\"" << sx(s.from.x) << "\" y1=\"" << sy(s.from.y) << "\" x2=\"" << sx(s.to.x) << "\" y2=\""
         << sy(s.to.y) << "\"/>\n";
      if (s.weight > 1) {
        const Point2 mid{(s.from.x + s.to.x) / 2, (s.from.y + s.to.y) / 2};
        os << "<text x=\"" << sx(mid.x) << "\" y=\"" << sy(mid.y) << "\" font-size=\"28\" stroke=\"none\">"
           << s.weight << "</text>\n";
      }
    }
    for (const auto& r : e.rays) {
      const Rational reach = 3 * side / lattice_norm(r.direction);
      const Point2 end = along(r.from, r.direction, reach);
      os << "<line x1=\"" << sx(r.from.x) << "\" y1=\"" << sy(r.from.y) << "\" x2=\"" << sx(end.x) << "\" y2=\""
         << sy(end.y) << "\"/>\n";
      if (r.weight > 1) {
        const Point2 at = along(r.from, r.direction, side / 10 / lattice_norm(r.direction));
        os << "<text x=\"" << sx(at.x) << "\" y=\"" << sy(at.y) << "\" font-size=\"28\" stroke=\"none\">" << r.weight
           << "</text>\n";
      }
    }
    os << "</g>\n";
  }
  os << "<g fill=\"black\">\n";
  for (std::size_t i = 0; i < points.size(); ++i)
    os << "<circle cx=\"" << sx(points[i].x) << "\" cy=\"" << sy(points[i].y) << "\" r=\"8\"><title>p" << i + 1
       << "</title></circle>\n";
  os << "</g>\n</svg>\n";
  return os.str();
}

}  // namespace trop
