#include "heatmc/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "heatmc/error.hpp"

namespace heatmc::svg {
namespace {

constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 36.0;
constexpr double kBottom = 50.0;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::pair<double, double> range_of(std::span<const double> v) {
  double lo = *std::min_element(v.begin(), v.end());
  double hi = *std::max_element(v.begin(), v.end());
  if (!(hi > lo)) {
    const double pad = lo == 0.0 ? 1.0 : 0.5 * std::abs(lo);
    lo -= pad;
    hi += pad;
  }
  return {lo, hi};
}

// Viridis-like ramp through five anchor colours.
std::string colour(double t) {
  static const double anchors[5][3] = {
      {68, 1, 84}, {59, 82, 139}, {33, 145, 140}, {94, 201, 98}, {253, 231, 37}};
  t = std::clamp(t, 0.0, 1.0) * 4.0;
  const int k = std::min(3, static_cast<int>(t));
  const double f = t - k;
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x",
                static_cast<int>(std::lround(anchors[k][0] + f * (anchors[k + 1][0] - anchors[k][0]))),
                static_cast<int>(std::lround(anchors[k][1] + f * (anchors[k + 1][1] - anchors[k][1]))),
                static_cast<int>(std::lround(anchors[k][2] + f * (anchors[k + 1][2] - anchors[k][2]))));
  return buf;
}

}  // namespace

std::string escape(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string line_plot(std::span<const double> x, std::span<const double> y, const PlotOptions& opts) {
  if (x.size() != y.size()) throw InputError("line_plot: x and y lengths differ");
  if (x.empty()) throw InputError("line_plot: no data");
  const auto [xlo, xhi] = range_of(x);
  const auto [ylo, yhi] = range_of(y);
  const double pw = opts.width - kLeft - kRight;
  const double ph = opts.height - kTop - kBottom;
  auto px = [&](double v) { return kLeft + (v - xlo) / (xhi - xlo) * pw; };
  auto py = [&](double v) { return kTop + ph - (v - ylo) / (yhi - ylo) * ph; };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opts.width << "\" height=\""
     << opts.height << "\" viewBox=\"0 0 " << opts.width << ' ' << opts.height << "\">\n"
     << "<rect x=\"0\" y=\"0\" width=\"" << opts.width << "\" height=\"" << opts.height
     << "\" fill=\"white\"/>\n"
     << "<text x=\"" << num(opts.width / 2.0) << "\" y=\"22\" text-anchor=\"middle\" "
     << "font-family=\"sans-serif\" font-size=\"15\">" << escape(opts.title) << "</text>\n";

  // Axes and ticks.
  os << "<g stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n"
     << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(kTop + ph) << "\" x2=\"" << num(kLeft + pw)
     << "\" y2=\"" << num(kTop + ph) << "\"/>\n"
     << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(kTop) << "\" x2=\"" << num(kLeft)
     << "\" y2=\"" << num(kTop + ph) << "\"/>\n</g>\n";
  os << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
  for (int t = 0; t <= 4; ++t) {
    const double fx = xlo + (xhi - xlo) * t / 4.0;
    const double fy = ylo + (yhi - ylo) * t / 4.0;
    os << "<text x=\"" << num(px(fx)) << "\" y=\"" << num(kTop + ph + 16)
       << "\" text-anchor=\"middle\">" << tick_label(fx) << "</text>\n"
       << "<text x=\"" << num(kLeft - 6) << "\" y=\"" << num(py(fy) + 4)
       << "\" text-anchor=\"end\">" << tick_label(fy) << "</text>\n";
  }
  os << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"" << num(opts.height - 10.0)
     << "\" text-anchor=\"middle\">" << escape(opts.x_label) << "</text>\n"
     << "<text x=\"14\" y=\"" << num(kTop + ph / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 14 "
     << num(kTop + ph / 2) << ")\">" << escape(opts.y_label) << "</text>\n</g>\n";

  const std::size_t len = x.size();
  const std::size_t step = std::max<std::size_t>(1, (len + opts.max_points - 1) / std::max<std::size_t>(1, opts.max_points));
  os << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
  for (std::size_t k = 0; k < len; k += step) os << num(px(x[k])) << ',' << num(py(y[k])) << ' ';
  if ((len - 1) % step != 0) os << num(px(x[len - 1])) << ',' << num(py(y[len - 1]));
  os << "\"/>\n</svg>\n";
  return os.str();
}

std::string heatmap(const ConductivityField& f, const std::string& title, int cell_px) {
  if (f.empty()) throw InputError("heatmap: empty field");
  const auto [lo, hi] = range_of(f.values());
  const int gw = static_cast<int>(f.cols()) * cell_px;
  const int gh = static_cast<int>(f.rows()) * cell_px;
  const int width = gw + 140;
  const int height = gh + 70;

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n"
     << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n"
     << "<text x=\"" << (20 + gw / 2) << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
     << "font-size=\"15\">" << escape(title) << "</text>\n<g shape-rendering=\"crispEdges\">\n";
  for (std::size_t i = 0; i < f.rows(); ++i) {
    const int y = 40 + static_cast<int>(f.rows() - 1 - i) * cell_px;
    for (std::size_t j = 0; j < f.cols(); ++j) {
      const int x = 20 + static_cast<int>(j) * cell_px;
      os << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << cell_px << "\" height=\""
         << cell_px << "\" fill=\"" << colour((f(i, j) - lo) / (hi - lo)) << "\"/>\n";
    }
  }
  os << "</g>\n";
  const int bar_x = 40 + gw;
  for (int k = 0; k < 50; ++k) {
    const double t = 1.0 - k / 49.0;
    os << "<rect x=\"" << bar_x << "\" y=\"" << num(40 + k * gh / 50.0) << "\" width=\"16\" height=\""
       << num(gh / 50.0 + 0.5) << "\" fill=\"" << colour(t) << "\"/>\n";
  }
  os << "<g font-family=\"sans-serif\" font-size=\"11\">\n"
     << "<text x=\"" << bar_x + 22 << "\" y=\"48\">" << tick_label(hi) << "</text>\n"
     << "<text x=\"" << bar_x + 22 << "\" y=\"" << 40 + gh << "\">" << tick_label(lo) << "</text>\n"
     << "</g>\n</svg>\n";
  return os.str();
}

}  // namespace heatmc::svg
