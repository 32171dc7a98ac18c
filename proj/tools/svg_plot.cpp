#include "svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "bitan/kernels/kernels.hpp"

namespace bitan::cli {

namespace {

constexpr double kPlot = 600.0;
constexpr double kLeft = 20.0, kTop = 40.0;
constexpr double kPad = 0.05;

const char* const kPalette[] = {"#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02",
                                "#a6761d", "#1f78b4", "#b15928", "#6a3d9a", "#666666", "#33a02c"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return std::string(buf) == "-0.00" ? "0.00" : buf;
}

std::string escape(const std::string& s) {
  std::string r;
  for (char c : s) {
    if (c == '&') r += "&amp;";
    else if (c == '<') r += "&lt;";
    else if (c == '>') r += "&gt;";
    else if (c == '"') r += "&quot;";
    else r += c;
  }
  return r;
}

struct Frame {
  double xmin, xmax, ymin, ymax;  // padded
  double px(double x) const { return kLeft + (x - xmin) / (xmax - xmin) * kPlot; }
  double py(double y) const { return kTop + (ymax - y) / (ymax - ymin) * kPlot; }
};

struct Pt {
  double x, y;
};

// Clips a x + b y + c = 0 to the box; false if it misses.
bool clip(const std::array<double, 3>& l, double x0, double x1, double y0, double y1, Pt& p, Pt& q) {
  const double a = l[0], b = l[1], c = l[2];
  std::vector<Pt> hits;
  const double ex = 1e-12 * (x1 - x0), ey = 1e-12 * (y1 - y0);
  if (std::abs(b) > 1e-14)
    for (double x : {x0, x1}) {
      const double y = -(a * x + c) / b;
      if (y >= y0 - ey && y <= y1 + ey) hits.push_back({x, y});
    }
  if (std::abs(a) > 1e-14)
    for (double y : {y0, y1}) {
      const double x = -(b * y + c) / a;
      if (x >= x0 - ex && x <= x1 + ex) hits.push_back({x, y});
    }
  if (hits.size() < 2) return false;
  double best = -1.0;
  for (std::size_t i = 0; i < hits.size(); ++i)
    for (std::size_t j = i + 1; j < hits.size(); ++j) {
      const double d = std::hypot(hits[i].x - hits[j].x, hits[i].y - hits[j].y);
      if (d > best) best = d, p = hits[i], q = hits[j];
    }
  return best > 0.0;
}

bool real_coefficients(const TernaryQuartic& f) { return f.has_real_coefficients(1e-9); }

}  // namespace

std::array<double, 3> real_line(const ProjLine& line) {
  const Vec3& v = line.coords();
  std::size_t k = 0;
  for (std::size_t i = 1; i < 3; ++i)
    if (std::abs(v[i]) > std::abs(v[k])) k = i;
  std::array<double, 3> r{};
  for (std::size_t i = 0; i < 3; ++i) r[i] = (v[i] / v[k]).real();
  return r;
}

PlotResult render_svg(const PlotInput& in) {
  PlotResult res;
  const auto& w = in.window;
  const double padx = kPad * (w[1] - w[0]), pady = kPad * (w[3] - w[2]);
  const Frame fr{w[0] - padx, w[1] + padx, w[2] - pady, w[3] + pady};

  std::ostringstream path;
  if (in.quartic && real_coefficients(*in.quartic)) {
    res.contoured = true;
    const int n = in.grid;
    const double dx = (w[1] - w[0]) / n, dy = (w[3] - w[2]) / n;
    std::vector<double> val(static_cast<std::size_t>((n + 1) * (n + 1)));
    const auto& row = kernels::active().real_quartic_row;
    const auto& mons = quartic_monomials();
    for (int j = 0; j <= n; ++j) {
      const double y = w[2] + j * dy;
      double c[5] = {0, 0, 0, 0, 0};
      for (std::size_t m = 0; m < 15; ++m) c[mons[m].x] += in.quartic->coeffs()[m].real() * std::pow(y, mons[m].y);
      row(c, w[0], dx, std::span<double>(val.data() + static_cast<std::size_t>(j * (n + 1)), static_cast<std::size_t>(n + 1)));
    }
    auto at = [&](int i, int j) { return val[static_cast<std::size_t>(j * (n + 1) + i)]; };
    auto lerp = [](double a, double b) { return a / (a - b); };
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const double v00 = at(i, j), v10 = at(i + 1, j), v11 = at(i + 1, j + 1), v01 = at(i, j + 1);
        const bool s00 = v00 > 0, s10 = v10 > 0, s11 = v11 > 0, s01 = v01 > 0;
        const double x = w[0] + i * dx, y = w[2] + j * dy;
        // crossing points on bottom, right, top, left edges
        Pt e[4];
        bool has[4] = {s00 != s10, s10 != s11, s01 != s11, s00 != s01};
        if (has[0]) e[0] = {x + lerp(v00, v10) * dx, y};
        if (has[1]) e[1] = {x + dx, y + lerp(v10, v11) * dy};
        if (has[2]) e[2] = {x + lerp(v01, v11) * dx, y + dy};
        if (has[3]) e[3] = {x, y + lerp(v00, v01) * dy};
        std::vector<std::pair<int, int>> segs;
        const int count = has[0] + has[1] + has[2] + has[3];
        if (count == 2) {
          int a = -1, b = -1;
          for (int k = 0; k < 4; ++k)
            if (has[k]) (a < 0 ? a : b) = k;
          segs.push_back({a, b});
        } else if (count == 4) {
          const bool centre = (v00 + v10 + v11 + v01) > 0;
          if (centre == s00) segs = {{0, 1}, {2, 3}};
          else segs = {{3, 0}, {1, 2}};
        }
        for (const auto& [a, b] : segs) {
          path << "M" << num(fr.px(e[a].x)) << ' ' << num(fr.py(e[a].y)) << "L" << num(fr.px(e[b].x)) << ' '
               << num(fr.py(e[b].y));
          ++res.segments;
        }
      }
    res.curve_drawn = res.segments > 0;
  }

  std::ostringstream svg;
  const double width = kLeft + kPlot + 260.0, height = kTop + kPlot + 20.0;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(width) << "\" height=\""
      << num(height) << "\" viewBox=\"0 0 " << num(width) << ' ' << num(height) << "\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << num(width) << "\" height=\"" << num(height) << "\" fill=\"white\"/>\n"
      << "<text x=\"" << num(kLeft) << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"15\">" << escape(in.title)
      << "</text>\n"
      << "<clipPath id=\"pad\"><rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\"" << num(kPlot)
      << "\" height=\"" << num(kPlot) << "\"/></clipPath>\n";
  const double wx0 = fr.px(w[0]), wx1 = fr.px(w[1]), wy0 = fr.py(w[3]), wy1 = fr.py(w[2]);
  svg << "<rect class=\"window\" x=\"" << num(wx0) << "\" y=\"" << num(wy0) << "\" width=\"" << num(wx1 - wx0)
      << "\" height=\"" << num(wy1 - wy0) << "\" fill=\"none\" stroke=\"#bbbbbb\" stroke-width=\"1\"/>\n";
  if (res.curve_drawn)
    svg << "<path class=\"curve\" d=\"" << path.str()
        << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1.6\" stroke-linecap=\"round\"/>\n";

  svg << "<g clip-path=\"url(#pad)\">\n";
  for (const PlotLine& pl : in.lines) {
    const auto l = real_line(pl.line);
    if (std::hypot(l[0], l[1]) < 1e-12) {
      ++res.lines_at_infinity;
      continue;
    }
    Pt p{}, q{}, pp{}, qq{};
    if (!clip(l, fr.xmin, fr.xmax, fr.ymin, fr.ymax, pp, qq)) continue;
    const char* colour = kPalette[pl.color_class % std::size(kPalette)];
    // dashed beyond the window, solid inside
    svg << "<line class=\"bitangent\" data-class=\"" << pl.color_class << "\" x1=\"" << num(fr.px(pp.x)) << "\" y1=\""
        << num(fr.py(pp.y)) << "\" x2=\"" << num(fr.px(qq.x)) << "\" y2=\"" << num(fr.py(qq.y)) << "\" stroke=\""
        << colour << "\" stroke-width=\"1.2\" stroke-dasharray=\"5,4\"/>\n";
    if (clip(l, w[0], w[1], w[2], w[3], p, q))
      svg << "<line class=\"bitangent\" data-class=\"" << pl.color_class << "\" x1=\"" << num(fr.px(p.x)) << "\" y1=\""
          << num(fr.py(p.y)) << "\" x2=\"" << num(fr.px(q.x)) << "\" y2=\"" << num(fr.py(q.y)) << "\" stroke=\""
          << colour << "\" stroke-width=\"1.6\"/>\n";
    ++res.lines_drawn;
  }
  svg << "</g>\n";

  double ly = kTop + 10.0;
  const double lx = kLeft + kPlot + 20.0;
  svg << "<g class=\"legend\" font-family=\"sans-serif\" font-size=\"13\">\n";
  for (std::size_t k = 0; k < in.classes.size(); ++k) {
    const char* colour = kPalette[k % std::size(kPalette)];
    svg << "<line x1=\"" << num(lx) << "\" y1=\"" << num(ly) << "\" x2=\"" << num(lx + 24) << "\" y2=\"" << num(ly)
        << "\" stroke=\"" << colour << "\" stroke-width=\"3\"/>\n"
        << "<text x=\"" << num(lx + 32) << "\" y=\"" << num(ly + 4) << "\">" << escape(in.classes[k].name) << ": "
        << in.classes[k].lines << " real</text>\n";
    ly += 20.0;
  }
  svg << "</g>\n";

  std::string warning;
  if (!res.contoured) warning = "complex coefficients: curve not drawn";
  else if (!res.curve_drawn) warning = "no real points in window";
  if (!warning.empty())
    svg << "<text class=\"warning\" x=\"" << num(kLeft + 10) << "\" y=\"" << num(kTop + kPlot - 10)
        << "\" font-family=\"sans-serif\" font-size=\"14\" fill=\"#b00000\">" << escape(warning) << "</text>\n";
  if (res.lines_at_infinity > 0)
    svg << "<text class=\"note\" x=\"" << num(kLeft + 10) << "\" y=\"" << num(kTop + 16)
        << "\" font-family=\"sans-serif\" font-size=\"13\">" << res.lines_at_infinity
        << " real line(s) at infinity (z = 0) not shown</text>\n";
  svg << "</svg>\n";
  res.svg = svg.str();
  return res;
}

}  // namespace bitan::cli
