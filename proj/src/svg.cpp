#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace sshlab::svg {
namespace {

constexpr int kMarginLeft = 80;
constexpr int kMarginRight = 140;
constexpr int kMarginTop = 40;
constexpr int kMarginBottom = 60;

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", x);
  return buf;
}

std::string tick_label(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", std::abs(x) < 1e-12 ? 0.0 : x);
  return buf;
}

std::vector<double> nice_ticks(double lo, double hi) {
  if (!(hi > lo)) return {lo};
  const double raw = (hi - lo) / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    step = m * mag;
    if (step >= raw) break;
  }
  std::vector<double> ticks;
  for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * step; t += step) ticks.push_back(t);
  return ticks;
}

std::vector<double> log_ticks(double lo, double hi) {
  std::vector<double> ticks;
  for (int e = static_cast<int>(std::floor(std::log10(lo))); e <= std::ceil(std::log10(hi)); ++e) {
    const double t = std::pow(10.0, e);
    if (t >= lo * (1 - 1e-9) && t <= hi * (1 + 1e-9)) ticks.push_back(t);
  }
  return ticks;
}

void open_svg(std::ostringstream& os, const PlotSpec& spec) {
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  if (!spec.comment.empty()) {
    std::string safe = spec.comment;
    for (std::size_t p = safe.find("--"); p != std::string::npos; p = safe.find("--", p)) {
      safe.replace(p, 2, "- -");
    }
    os << "<!-- " << safe << " -->\n";
  }
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width << "\" height=\""
     << spec.height << "\" viewBox=\"0 0 " << spec.width << ' ' << spec.height << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  if (!spec.title.empty()) {
    os << "<text x=\"" << spec.width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">"
       << escape(spec.title) << "</text>\n";
  }
}

struct Frame {
  double x0, y0, w, h;
};

void axes(std::ostringstream& os, const PlotSpec& spec, const Frame& f, const std::vector<double>& xt,
          const std::vector<double>& x_pos, const std::vector<double>& yt,
          const std::vector<double>& y_pos) {
  os << "<rect x=\"" << num(f.x0) << "\" y=\"" << num(f.y0) << "\" width=\"" << num(f.w)
     << "\" height=\"" << num(f.h) << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (std::size_t i = 0; i < xt.size(); ++i) {
    const double x = x_pos[i];
    os << "<line x1=\"" << num(x) << "\" y1=\"" << num(f.y0 + f.h) << "\" x2=\"" << num(x)
       << "\" y2=\"" << num(f.y0 + f.h + 5) << "\" stroke=\"black\"/>"
       << "<text x=\"" << num(x) << "\" y=\"" << num(f.y0 + f.h + 18)
       << "\" text-anchor=\"middle\">" << tick_label(xt[i]) << "</text>\n";
  }
  for (std::size_t i = 0; i < yt.size(); ++i) {
    const double y = y_pos[i];
    os << "<line x1=\"" << num(f.x0 - 5) << "\" y1=\"" << num(y) << "\" x2=\"" << num(f.x0)
       << "\" y2=\"" << num(y) << "\" stroke=\"black\"/>"
       << "<text x=\"" << num(f.x0 - 8) << "\" y=\"" << num(y + 4) << "\" text-anchor=\"end\">"
       << tick_label(yt[i]) << "</text>\n";
  }
  os << "<text x=\"" << num(f.x0 + f.w / 2) << "\" y=\"" << num(f.y0 + f.h + 40)
     << "\" text-anchor=\"middle\">" << escape(spec.x_label) << "</text>\n"
     << "<text transform=\"translate(" << num(f.x0 - 60) << ',' << num(f.y0 + f.h / 2)
     << ") rotate(-90)\" text-anchor=\"middle\">" << escape(spec.y_label) << "</text>\n";
}

}  // namespace

Rgb viridis(double t) {
  t = std::clamp(std::isfinite(t) ? t : 0.0, 0.0, 1.0);
  static constexpr std::array<std::array<double, 3>, 7> c = {{
      {0.2777273272234177, 0.005407344544966578, 0.3340998053353061},
      {0.1050930431085774, 1.404613529898575, 1.384590162594685},
      {-0.3308618287255563, 0.214847559468213, 0.09509516302823659},
      {-4.634230498983486, -5.799100973351585, -19.33244095627987},
      {6.228269936347081, 14.17993336680509, 56.69055260068105},
      {4.776384997670288, -13.74514537774601, -65.35303263337234},
      {-5.435455855934631, 4.645852612178535, 26.3124352495832},
  }};
  std::array<int, 3> out{};
  for (int ch = 0; ch < 3; ++ch) {
    double v = c[6][ch];
    for (int k = 5; k >= 0; --k) v = c[k][ch] + t * v;
    out[ch] = static_cast<int>(std::lround(255.0 * std::clamp(v, 0.0, 1.0)));
  }
  return {out[0], out[1], out[2]};
}

std::string hex(Rgb c) {
  char buf[8];
  std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", c.r, c.g, c.b);
  return buf;
}

std::string escape(const std::string& text) {
  std::string out;
  for (char ch : text) {
    switch (ch) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

std::string line_plot(const PlotSpec& spec, const std::vector<Series>& series) {
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      if (spec.log_x && !(s.x[i] > 0)) continue;
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      ymin = std::min(ymin, s.y[i]);
      ymax = std::max(ymax, s.y[i]);
    }
  }
  if (!std::isfinite(xmin)) xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  if (xmax <= xmin) xmax = xmin + 1;
  if (ymax <= ymin) {
    ymin -= 0.5;
    ymax += 0.5;
  }
  const double pad = 0.05 * (ymax - ymin);
  ymin -= pad;
  ymax += pad;

  const Frame f{static_cast<double>(kMarginLeft), static_cast<double>(kMarginTop),
                static_cast<double>(spec.width - kMarginLeft - kMarginRight),
                static_cast<double>(spec.height - kMarginTop - kMarginBottom)};
  auto px = [&](double x) {
    const double u = spec.log_x ? (std::log(x) - std::log(xmin)) / (std::log(xmax) - std::log(xmin))
                                : (x - xmin) / (xmax - xmin);
    return f.x0 + u * f.w;
  };
  auto py = [&](double y) { return f.y0 + f.h - (y - ymin) / (ymax - ymin) * f.h; };

  std::ostringstream os;
  open_svg(os, spec);
  const auto xt = spec.log_x ? log_ticks(xmin, xmax) : nice_ticks(xmin, xmax);
  const auto yt = nice_ticks(ymin, ymax);
  std::vector<double> xp, yp;
  for (double t : xt) xp.push_back(px(t));
  for (double t : yt) yp.push_back(py(t));
  axes(os, spec, f, xt, xp, yt, yp);

  int legend_row = 0;
  for (const auto& s : series) {
    if (s.markers) {
      os << "<g fill=\"" << s.colour << "\">";
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        if (!std::isfinite(s.y[i]) || (spec.log_x && !(s.x[i] > 0))) continue;
        os << "<circle cx=\"" << num(px(s.x[i])) << "\" cy=\"" << num(py(s.y[i])) << "\" r=\"1.5\"/>";
      }
      os << "</g>\n";
    } else {
      os << "<polyline fill=\"none\" stroke=\"" << s.colour << "\" stroke-width=\"1.5\" points=\"";
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        if (!std::isfinite(s.y[i]) || (spec.log_x && !(s.x[i] > 0))) continue;
        os << num(px(s.x[i])) << ',' << num(py(s.y[i])) << ' ';
      }
      os << "\"/>\n";
    }
    if (!s.label.empty()) {
      const double ly = f.y0 + 10 + 18 * legend_row++;
      const double lx = f.x0 + f.w + 12;
      os << "<line x1=\"" << num(lx) << "\" y1=\"" << num(ly) << "\" x2=\"" << num(lx + 20)
         << "\" y2=\"" << num(ly) << "\" stroke=\"" << s.colour << "\" stroke-width=\"3\"/>"
         << "<text x=\"" << num(lx + 26) << "\" y=\"" << num(ly + 4) << "\">" << escape(s.label)
         << "</text>\n";
    }
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

std::string heatmap(const PlotSpec& spec, const std::vector<double>& values, int rows, int cols,
                    double x_min, double x_max, double y_min, double y_max) {
  const Frame f{static_cast<double>(kMarginLeft), static_cast<double>(kMarginTop),
                static_cast<double>(spec.width - kMarginLeft - kMarginRight),
                static_cast<double>(spec.height - kMarginTop - kMarginBottom)};
  const double cw = f.w / cols;
  const double ch = f.h / rows;

  std::ostringstream os;
  open_svg(os, spec);
  os << "<g shape-rendering=\"crispEdges\">\n";
  for (int r = 0; r < rows; ++r) {
    // Runs of equal colour share one rect.
    int c = 0;
    while (c < cols) {
      const std::string colour = hex(viridis(values[static_cast<std::size_t>(r) * cols + c]));
      int end = c + 1;
      while (end < cols && hex(viridis(values[static_cast<std::size_t>(r) * cols + end])) == colour) ++end;
      os << "<rect x=\"" << num(f.x0 + c * cw) << "\" y=\"" << num(f.y0 + r * ch) << "\" width=\""
         << num((end - c) * cw + 0.01) << "\" height=\"" << num(ch + 0.01) << "\" fill=\"" << colour
         << "\"/>";
      c = end;
    }
    os << '\n';
  }
  os << "</g>\n";

  // Time grows downward.
  const auto xt = nice_ticks(x_min, x_max);
  const auto yt = nice_ticks(y_min, y_max);
  std::vector<double> xp, yp;
  for (double t : xt) xp.push_back(f.x0 + (t - x_min) / (x_max - x_min) * f.w);
  for (double t : yt) yp.push_back(f.y0 + (t - y_min) / (y_max - y_min) * f.h);
  axes(os, spec, f, xt, xp, yt, yp);

  // Colour bar.
  const double bx = f.x0 + f.w + 20;
  for (int i = 0; i < 100; ++i) {
    const double t = 1.0 - i / 99.0;
    os << "<rect x=\"" << num(bx) << "\" y=\"" << num(f.y0 + i * f.h / 100) << "\" width=\"16\" height=\""
       << num(f.h / 100 + 0.5) << "\" fill=\"" << hex(viridis(t)) << "\"/>";
  }
  os << "\n<text x=\"" << num(bx + 22) << "\" y=\"" << num(f.y0 + 10) << "\">max</text>"
     << "<text x=\"" << num(bx + 22) << "\" y=\"" << num(f.y0 + f.h) << "\">0</text>\n";
  os << "</g>\n</svg>\n";
  return os.str();
}

}  // namespace sshlab::svg
