#include "apal/figures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <stdexcept>

namespace apal {

namespace {

constexpr double kWidth = 640;
constexpr double kHeight = 420;
constexpr double kLeft = 72;
constexpr double kRight = 150;
constexpr double kTop = 40;
constexpr double kBottom = 56;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
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

// Roughly five round-valued ticks covering [lo, hi].
std::vector<double> linear_ticks(double lo, double hi) {
  const double span = hi - lo;
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    step = m * mag;
    if (step >= raw) break;
  }
  std::vector<double> ticks;
  for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * span; t += step) {
    ticks.push_back(std::abs(t) < 1e-12 * step ? 0.0 : t);
  }
  return ticks;
}

}  // namespace

std::string render_svg(const PlotSpec& spec) {
  double x_lo = std::numeric_limits<double>::infinity();
  double x_hi = -x_lo;
  double y_lo = x_lo;
  double y_hi = -x_lo;
  auto usable = [&](double y) { return std::isfinite(y) && (!spec.log_y || y > 0.0); };
  for (const auto& s : spec.series) {
    for (std::size_t k = 0; k < s.x.size(); ++k) {
      if (!usable(s.y[k])) continue;
      x_lo = std::min(x_lo, s.x[k]);
      x_hi = std::max(x_hi, s.x[k]);
      const double y = spec.log_y ? std::log10(s.y[k]) : s.y[k];
      y_lo = std::min(y_lo, y);
      y_hi = std::max(y_hi, y);
    }
  }
  if (!std::isfinite(x_lo)) {
    x_lo = 0;
    x_hi = 1;
    y_lo = 0;
    y_hi = 1;
  }
  if (spec.y_min) y_lo = spec.log_y ? std::log10(*spec.y_min) : *spec.y_min;
  if (spec.y_max) y_hi = spec.log_y ? std::log10(*spec.y_max) : *spec.y_max;
  if (spec.log_y) {
    y_lo = std::floor(y_lo);
    y_hi = std::ceil(y_hi);
  }
  if (x_hi <= x_lo) x_hi = x_lo + 1;
  if (y_hi <= y_lo) y_hi = y_lo + 1;

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - x_lo) / (x_hi - x_lo) * plot_w; };
  auto py = [&](double y) {
    const double v = spec.log_y ? std::log10(y) : y;
    return kTop + (1.0 - (v - y_lo) / (y_hi - y_lo)) * plot_h;
  };

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" +
         num(kHeight) + "\" viewBox=\"0 0 " + num(kWidth) + " " + num(kHeight) +
         "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"" + num(kLeft + plot_w / 2) + "\" y=\"22\" text-anchor=\"middle\" " +
         "font-size=\"14\">" + escape(spec.title) + "</text>\n";

  // Axes and ticks.
  svg += "<rect x=\"" + num(kLeft) + "\" y=\"" + num(kTop) + "\" width=\"" + num(plot_w) +
         "\" height=\"" + num(plot_h) + "\" fill=\"none\" stroke=\"black\"/>\n";
  for (double t : linear_ticks(x_lo, x_hi)) {
    const double x = px(t);
    svg += "<line x1=\"" + num(x) + "\" y1=\"" + num(kTop + plot_h) + "\" x2=\"" + num(x) +
           "\" y2=\"" + num(kTop + plot_h + 5) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + num(x) + "\" y=\"" + num(kTop + plot_h + 18) +
           "\" text-anchor=\"middle\">" + num(t) + "</text>\n";
  }
  std::vector<double> y_ticks;
  if (spec.log_y) {
    for (double e = y_lo; e <= y_hi + 1e-9; e += 1.0) y_ticks.push_back(e);
  } else {
    y_ticks = linear_ticks(y_lo, y_hi);
  }
  for (double t : y_ticks) {
    const double y = spec.log_y ? py(std::pow(10.0, t)) : py(t);
    const std::string label = spec.log_y ? "1e" + num(t) : num(t);
    svg += "<line x1=\"" + num(kLeft - 5) + "\" y1=\"" + num(y) + "\" x2=\"" + num(kLeft) +
           "\" y2=\"" + num(y) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + num(kLeft - 8) + "\" y=\"" + num(y + 4) + "\" text-anchor=\"end\">" +
           label + "</text>\n";
  }
  svg += "<text x=\"" + num(kLeft + plot_w / 2) + "\" y=\"" + num(kHeight - 14) +
         "\" text-anchor=\"middle\">" + escape(spec.x_label) + "</text>\n";
  svg += "<text transform=\"translate(18," + num(kTop + plot_h / 2) +
         ") rotate(-90)\" text-anchor=\"middle\">" + escape(spec.y_label) + "</text>\n";

  // Series, clipped to the plot area.
  svg += "<clipPath id=\"plot\"><rect x=\"" + num(kLeft) + "\" y=\"" + num(kTop) +
         "\" width=\"" + num(plot_w) + "\" height=\"" + num(plot_h) + "\"/></clipPath>\n";
  for (std::size_t s = 0; s < spec.series.size(); ++s) {
    const auto& series = spec.series[s];
    const char* color = kPalette[s % std::size(kPalette)];
    std::string points;
    auto flush = [&] {
      if (points.empty()) return;
      svg += "<polyline clip-path=\"url(#plot)\" fill=\"none\" stroke=\"" + std::string(color) +
             "\" stroke-width=\"1.5\"" +
             (series.dashed ? " stroke-dasharray=\"6 4\"" : "") + " points=\"" + points +
             "\"/>\n";
      points.clear();
    };
    for (std::size_t k = 0; k < series.x.size(); ++k) {
      if (!usable(series.y[k])) {
        flush();
        continue;
      }
      if (!points.empty()) points += ' ';
      points += num(px(series.x[k])) + "," + num(py(series.y[k]));
    }
    flush();
    const double ly = kTop + 14 + 18 * static_cast<double>(s);
    const double lx = kLeft + plot_w + 12;
    svg += "<line x1=\"" + num(lx) + "\" y1=\"" + num(ly - 4) + "\" x2=\"" + num(lx + 22) +
           "\" y2=\"" + num(ly - 4) + "\" stroke=\"" + color + "\" stroke-width=\"2\"" +
           (series.dashed ? " stroke-dasharray=\"6 4\"" : "") + "/>\n";
    svg += "<text x=\"" + num(lx + 28) + "\" y=\"" + num(ly) + "\">" + escape(series.label) +
           "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

std::vector<std::filesystem::path> emit_figures(const std::vector<MetricsRow>& rows,
                                                const std::filesystem::path& out_dir) {
  // mode -> N -> rows in p order
  std::map<std::string, std::map<std::size_t, std::vector<MetricsRow>>> grouped;
  for (const auto& r : rows) grouped[r.mode][r.n].push_back(r);
  for (auto& [mode, by_n] : grouped) {
    for (auto& [n, list] : by_n) {
      std::sort(list.begin(), list.end(),
                [](const MetricsRow& a, const MetricsRow& b) { return a.p < b.p; });
    }
  }

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw std::runtime_error("cannot create " + out_dir.string() + ": " + ec.message());

  std::vector<std::filesystem::path> written;
  auto write = [&](const std::string& name, const std::string& mode, const std::string& n_tag,
                   const PlotSpec& spec) {
    const auto path = out_dir / ("fig_" + name + "_" + mode + "_n" + n_tag + ".svg");
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw std::runtime_error("cannot open " + path.string() + " for writing");
    file << render_svg(spec);
    if (!file) throw std::runtime_error("failed writing " + path.string());
    written.push_back(path);
  };

  using Field = std::optional<double> (*)(const MetricsRow&);
  auto series_of = [](const std::vector<MetricsRow>& list, const std::string& label, Field f) {
    Series s;
    s.label = label;
    for (const auto& r : list) {
      if (const auto v = f(r)) {
        s.x.push_back(r.alpha);
        s.y.push_back(*v);
      }
    }
    return s;
  };
  const Field error = [](const MetricsRow& r) -> std::optional<double> { return r.mean_error; };
  const Field success = [](const MetricsRow& r) -> std::optional<double> {
    return r.success_fraction;
  };
  const Field entropy = [](const MetricsRow& r) { return r.entropy_density; };
  const Field gen = [](const MetricsRow& r) { return r.gen_error; };

  for (const auto& [mode, by_n] : grouped) {
    std::string joined;
    PlotSpec error_all{"Mean inference error, " + mode, "alpha = P/N", "mean error"};
    PlotSpec error_log_all{"Mean inference error (tail), " + mode, "alpha = P/N", "mean error",
                           true};
    PlotSpec success_all{"Success fraction, " + mode, "alpha = P/N", "success fraction"};
    success_all.y_min = 0.0;
    success_all.y_max = 1.0;

    for (const auto& [n, list] : by_n) {
      const std::string tag = std::to_string(n);
      const std::string label = "N = " + tag;
      joined += (joined.empty() ? "" : "-") + tag;

      PlotSpec e{"Mean inference error, " + mode + ", N = " + tag, "alpha = P/N", "mean error"};
      e.series.push_back(series_of(list, label, error));
      write("error", mode, tag, e);

      PlotSpec el{"Mean inference error (tail), " + mode + ", N = " + tag, "alpha = P/N",
                  "mean error", true};
      el.series.push_back(series_of(list, label, error));
      write("error-log", mode, tag, el);

      PlotSpec s{"Success fraction, " + mode + ", N = " + tag, "alpha = P/N", "success fraction"};
      s.y_min = 0.0;
      s.y_max = 1.0;
      s.series.push_back(series_of(list, label, success));
      write("success", mode, tag, s);

      if (list.front().entropy_density) {
        PlotSpec ent{"Entropy density, " + mode + ", N = " + tag, "alpha = P/N",
                     "s (bits per weight)"};
        ent.y_min = 0.0;
        ent.y_max = 1.0;
        ent.series.push_back(series_of(list, label, entropy));
        Series line{"1 - alpha", {0.0, 1.0}, {1.0, 0.0}, true};
        ent.series.push_back(line);
        write("entropy", mode, tag, ent);

        PlotSpec g{"Generalization error, " + mode + ", N = " + tag, "alpha = P/N",
                   "generalization error"};
        g.y_min = 0.0;
        g.series.push_back(series_of(list, label, gen));
        write("generror", mode, tag, g);
      }

      error_all.series.push_back(series_of(list, label, error));
      error_log_all.series.push_back(series_of(list, label, error));
      success_all.series.push_back(series_of(list, label, success));
    }
    if (by_n.size() > 1) {
      write("error", mode, joined, error_all);
      write("error-log", mode, joined, error_log_all);
      write("success", mode, joined, success_all);
    }
  }
  return written;
}

}  // namespace apal
