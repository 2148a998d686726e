#include "hn/render.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace hn {

std::string polygon_csv(const Polygon& p, int digits) {
  std::ostringstream os;
  os << "t,P\n";
  for (const auto& v : p.vertices)
    os << rat_to_string(v.t) << "," << decimal_string(v.height.to_double(), digits) << "\n";
  return os.str();
}

namespace {

std::string fixed2(double x) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.2f", x);
  return buf;
}

}  // namespace

std::string polygon_svg(const Polygon& p, int digits) {
  constexpr int width = 480, height = 360;
  constexpr double ml = 56, mr = 16, mt = 16, mb = 40;  // margins
  const double plot_w = width - ml - mr;
  const double plot_h = height - mt - mb;

  double ymin = 0.0, ymax = 0.0, tmax = 1.0;
  for (const auto& v : p.vertices) {
    const double h = v.height.to_double();
    ymin = std::min(ymin, h);
    ymax = std::max(ymax, h);
  }
  if (!p.vertices.empty()) tmax = std::max(1.0, to_double(p.vertices.back().t));
  if (ymax - ymin < 1e-12) ymax = ymin + 1.0;

  auto sx = [&](double t) { return ml + plot_w * (t / tmax); };
  auto sy = [&](double y) { return mt + plot_h * (1.0 - (y - ymin) / (ymax - ymin)); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  os << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height
     << "\" fill=\"white\"/>\n";
  // Axes.
  os << "<line x1=\"" << fixed2(ml) << "\" y1=\"" << fixed2(sy(0)) << "\" x2=\""
     << fixed2(width - mr) << "\" y2=\"" << fixed2(sy(0)) << "\" stroke=\"#888\"/>\n";
  os << "<line x1=\"" << fixed2(ml) << "\" y1=\"" << fixed2(mt) << "\" x2=\"" << fixed2(ml)
     << "\" y2=\"" << fixed2(height - mb) << "\" stroke=\"#888\"/>\n";
  // Ticks and labels at the vertices' abscissae.
  for (const auto& v : p.vertices) {
    const double x = sx(to_double(v.t));
    os << "<line x1=\"" << fixed2(x) << "\" y1=\"" << fixed2(height - mb) << "\" x2=\""
       << fixed2(x) << "\" y2=\"" << fixed2(height - mb + 5) << "\" stroke=\"#444\"/>\n";
    os << "<text x=\"" << fixed2(x) << "\" y=\"" << fixed2(height - mb + 18)
       << "\" font-family=\"monospace\" font-size=\"11\" text-anchor=\"middle\">"
       << rat_to_string(v.t) << "</text>\n";
  }
  // The polygon itself.
  if (!p.vertices.empty()) {
    os << "<polyline fill=\"none\" stroke=\"#1f5fbf\" stroke-width=\"2\" points=\"";
    for (size_t i = 0; i < p.vertices.size(); ++i) {
      if (i) os << " ";
      os << fixed2(sx(to_double(p.vertices[i].t))) << ","
         << fixed2(sy(p.vertices[i].height.to_double()));
    }
    os << "\"/>\n";
    for (const auto& v : p.vertices) {
      os << "<circle cx=\"" << fixed2(sx(to_double(v.t))) << "\" cy=\""
         << fixed2(sy(v.height.to_double())) << "\" r=\"2.5\" fill=\"#1f5fbf\"/>\n";
      os << "<text x=\"" << fixed2(sx(to_double(v.t)) + 4) << "\" y=\""
         << fixed2(sy(v.height.to_double()) - 4)
         << "\" font-family=\"monospace\" font-size=\"10\">"
         << decimal_string(v.height.to_double(), std::min(digits, 6)) << "</text>\n";
    }
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace hn
