#include "gclink/cli/svg.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

namespace gclink::cli {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

constexpr std::array<const char*, 10> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                                  "#17becf", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22"};

std::string fixed(double v) {
  if (std::fabs(v) < 5e-4) v = 0.0;
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 3);
  return std::string(buf, res.ptr);
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct View {
  double x0, y1, scale, margin;
  std::pair<double, double> map(double x, double y) const {
    return {margin + (x - x0) * scale, margin + (y1 - y) * scale};
  }
};

/// Linear interpolation of the page position at parameter t.
std::pair<double, double> position_at(const ProjectedCurve& c, double t) {
  const auto n = c.size();
  auto it = std::upper_bound(c.t.begin(), c.t.end(), t);
  const std::size_t i = it == c.t.begin() ? n - 1 : static_cast<std::size_t>(it - c.t.begin()) - 1;
  const std::size_t j = (i + 1) % n;
  const double ti = c.t[i];
  double tj = c.t[j];
  if (tj <= ti) tj += kTwoPi;
  double tt = t;
  if (tt < ti) tt += kTwoPi;
  const double f = (tt - ti) / (tj - ti);
  return {c.xy[2 * i] + f * (c.xy[2 * j] - c.xy[2 * i]), c.xy[2 * i + 1] + f * (c.xy[2 * j + 1] - c.xy[2 * i + 1])};
}

double local_speed(const ProjectedCurve& c, double t) {
  const double h = 1e-4;
  const auto a = position_at(c, std::fmod(t + kTwoPi - h, kTwoPi));
  const auto b = position_at(c, std::fmod(t + h, kTwoPi));
  return std::hypot(b.first - a.first, b.second - a.second) / (2.0 * h);
}

void append_point(std::string& d, const View& view, std::pair<double, double> p, bool move) {
  const auto [x, y] = view.map(p.first, p.second);
  if (!d.empty()) d += ' ';
  d += move ? 'M' : 'L';
  d += fixed(x) + " " + fixed(y);
}

std::string closed_path(const ProjectedCurve& c, const View& view) {
  std::string d;
  for (std::size_t i = 0; i < c.size(); ++i) append_point(d, view, {c.xy[2 * i], c.xy[2 * i + 1]}, i == 0);
  return d + " Z";
}

/// Gaps are (centre, half width) in the curve parameter; each run between two
/// consecutive gaps becomes one open subpath.
std::string gapped_path(const ProjectedCurve& c, std::vector<std::pair<double, double>> gaps, const View& view) {
  if (gaps.empty()) return closed_path(c, view);
  std::sort(gaps.begin(), gaps.end());
  std::string d;
  for (std::size_t g = 0; g < gaps.size(); ++g) {
    const auto& next = gaps[(g + 1) % gaps.size()];
    const double start = gaps[g].first + gaps[g].second;
    const double end = next.first - next.second + (g + 1 == gaps.size() ? kTwoPi : 0.0);
    if (end <= start) continue;
    append_point(d, view, position_at(c, std::fmod(start, kTwoPi)), true);
    for (int lap = 0; lap < 2; ++lap) {
      for (std::size_t i = 0; i < c.size(); ++i) {
        const double t = c.t[i] + lap * kTwoPi;
        if (t > start && t < end) append_point(d, view, {c.xy[2 * i], c.xy[2 * i + 1]}, false);
      }
    }
    append_point(d, view, position_at(c, std::fmod(end, kTwoPi)), false);
  }
  return d;
}

}  // namespace

std::string render_svg(const ProjectionScene& scene, const SvgOptions& options) {
  double reach = 0.0;
  for (std::size_t i = 0; i < scene.w_axis.size(); ++i) {
    reach = std::max(reach, std::hypot(scene.w_axis.xy[2 * i], scene.w_axis.xy[2 * i + 1]));
  }
  const double clip = 2.5 * std::max(reach, 1e-3);
  double xmin = -reach, xmax = reach, ymin = -reach, ymax = reach;
  for (const auto& c : scene.components) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      const double x = c.xy[2 * i], y = c.xy[2 * i + 1];
      if (std::fabs(x) > clip || std::fabs(y) > clip) continue;
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  }
  const double margin = 0.04 * options.size;
  const double extent = std::max({xmax - xmin, ymax - ymin, 1e-9});
  View view{xmin - 0.5 * (extent - (xmax - xmin)), ymax + 0.5 * (extent - (ymax - ymin)),
            (options.size - 2.0 * margin) / extent, margin};
  const double gap_length = options.gap_fraction * std::sqrt(2.0) * extent;

  std::vector<std::vector<std::pair<double, double>>> gaps(scene.components.size());
  for (const auto& x : scene.crossings) {
    const double speed = std::max(local_speed(scene.components[x.under], x.t_under), 1e-12);
    gaps[x.under].push_back({x.t_under, std::min(0.5 * gap_length / speed, 0.25)});
  }

  const std::string size = fixed(options.size);
  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + size + "\" height=\"" + size +
         "\" viewBox=\"0 0 " + size + " " + size + "\">\n";
  if (!options.title.empty()) out += "  <title>" + escape(options.title) + "</title>\n";
  out += "  <rect x=\"0\" y=\"0\" width=\"" + size + "\" height=\"" + size + "\" fill=\"white\"/>\n";
  out += "  <path class=\"w-axis\" d=\"" + closed_path(scene.w_axis, view) +
         "\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" stroke-linecap=\"round\" "
         "stroke-dasharray=\"0.1,6\"/>\n";
  for (std::size_t k = 0; k < scene.components.size(); ++k) {
    out += "  <path class=\"component\" id=\"component-" + std::to_string(k) + "\" d=\"" +
           gapped_path(scene.components[k], gaps[k], view) + "\" fill=\"none\" stroke=\"" +
           kPalette[k % kPalette.size()] + "\" stroke-width=\"" + fixed(options.stroke_width) +
           "\" stroke-linejoin=\"round\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace gclink::cli
