#include "cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace krf::cli {

namespace {

constexpr double W = 720, H = 440, L = 70, R = 170, Tp = 40, B = 50;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string esc(const std::string& s) {
  std::string o;
  for (char c : s) {
    if (c == '<') o += "&lt;";
    else if (c == '>') o += "&gt;";
    else if (c == '&') o += "&amp;";
    else o += c;
  }
  return o;
}

}  // namespace

std::string time_color(double s) {
  s = std::clamp(s, 0.0, 1.0);
  const int r = static_cast<int>(40 + 200 * s), b = static_cast<int>(220 - 190 * s), g = 60;
  char buf[16];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
  return buf;
}

std::string render_svg(const LineChart& c) {
  auto tx = [&](double v) { return c.logx ? std::log10(v) : v; };
  auto ty = [&](double v) { return c.logy ? std::log10(v) : v; };
  auto ok = [&](double x, double y) {
    return std::isfinite(x) && std::isfinite(y) && (!c.logx || x > 0) && (!c.logy || y > 0);
  };
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& s : c.series)
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i)
      if (ok(s.x[i], s.y[i])) {
        x0 = std::min(x0, tx(s.x[i]));
        x1 = std::max(x1, tx(s.x[i]));
        y0 = std::min(y0, ty(s.y[i]));
        y1 = std::max(y1, ty(s.y[i]));
      }
  if (!std::isfinite(x0)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (x1 <= x0) x1 = x0 + 1;
  if (y1 <= y0) y1 = y0 + 1;
  const double pw = W - L - R, ph = H - Tp - B;
  auto px = [&](double v) { return L + (tx(v) - x0) / (x1 - x0) * pw; };
  auto py = [&](double v) { return Tp + ph - (ty(v) - y0) / (y1 - y0) * ph; };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
    << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << esc(c.title)
    << "</text>\n";
  o << "<rect x=\"" << L << "\" y=\"" << Tp << "\" width=\"" << pw << "\" height=\"" << ph
    << "\" fill=\"none\" stroke=\"#444\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double fx = x0 + (x1 - x0) * i / 4, fy = y0 + (y1 - y0) * i / 4;
    const double gx = L + pw * i / 4, gy = Tp + ph - ph * i / 4;
    o << "<line x1=\"" << gx << "\" y1=\"" << Tp << "\" x2=\"" << gx << "\" y2=\"" << Tp + ph
      << "\" stroke=\"#ddd\"/>\n";
    o << "<line x1=\"" << L << "\" y1=\"" << gy << "\" x2=\"" << L + pw << "\" y2=\"" << gy
      << "\" stroke=\"#ddd\"/>\n";
    o << "<text x=\"" << gx << "\" y=\"" << Tp + ph + 16 << "\" text-anchor=\"middle\">"
      << (c.logx ? "1e" + num(fx) : num(fx)) << "</text>\n";
    o << "<text x=\"" << L - 6 << "\" y=\"" << gy + 4 << "\" text-anchor=\"end\">"
      << (c.logy ? "1e" + num(fy) : num(fy)) << "</text>\n";
  }
  o << "<text x=\"" << L + pw / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\">" << esc(c.xlabel)
    << "</text>\n";
  o << "<text x=\"16\" y=\"" << Tp + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
    << Tp + ph / 2 << ")\">" << esc(c.ylabel) << "</text>\n";

  int row = 0;
  for (const auto& s : c.series) {
    const std::size_t n = std::min(s.x.size(), s.y.size());
    const std::size_t stride = std::max<std::size_t>(1, n / 1500);
    o << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.4\" points=\"";
    for (std::size_t i = 0; i < n; i += stride)
      if (ok(s.x[i], s.y[i])) o << num(px(s.x[i])) << ',' << num(py(s.y[i])) << ' ';
    if (n && (n - 1) % stride && ok(s.x[n - 1], s.y[n - 1])) o << num(px(s.x[n - 1])) << ',' << num(py(s.y[n - 1]));
    o << "\"/>\n";
    if (c.legend && row < 24) {
      const double ly = Tp + 10 + 16 * row++;
      o << "<line x1=\"" << L + pw + 10 << "\" y1=\"" << ly << "\" x2=\"" << L + pw + 30 << "\" y2=\"" << ly
        << "\" stroke=\"" << s.color << "\" stroke-width=\"2\"/>\n";
      o << "<text x=\"" << L + pw + 34 << "\" y=\"" << ly + 4 << "\">" << esc(s.name) << "</text>\n";
    }
  }
  o << "</svg>\n";
  return o.str();
}

}  // namespace krf::cli
