#include "perclab/plot.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <vector>

namespace perclab {

PlotKind parse_plot_kind(const std::string& name) {
  if (name == "cdf-overlay") return PlotKind::CdfOverlay;
  if (name == "convergence-ladder") return PlotKind::ConvergenceLadder;
  if (name == "kernel-slice") return PlotKind::KernelSlice;
  throw ConfigError("unknown plot kind '" + name + "' (cdf-overlay, convergence-ladder, kernel-slice)");
}

namespace {

struct Series {
  std::string name;
  std::vector<double> x, y;
};

constexpr double kWidth = 640, kHeight = 420, kMargin = 60;
const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

int need(const Table& t, const std::string& col) {
  const int c = t.column(col);
  if (c < 0) throw ConfigError("plot: missing column '" + col + "'");
  return c;
}

double cell(const Table& t, std::size_t row, int col) {
  return parse_double(t.rows[row][col], "plot: column '" + t.header[col] + "'");
}

void render(const std::vector<Series>& series, const std::string& xlabel, const std::string& ylabel, bool log_y,
            const std::vector<std::string>& xticks, std::ostream& os) {
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      const double y = log_y ? std::log10(s.y[i]) : s.y[i];
      x0 = std::min(x0, s.x[i]);
      x1 = std::max(x1, s.x[i]);
      y0 = std::min(y0, y);
      y1 = std::max(y1, y);
    }
  if (!(x1 > x0)) x1 = x0 + 1;
  if (!(y1 > y0)) y1 = y0 + 1;
  const double pad = 0.05 * (y1 - y0);
  y0 -= pad;
  y1 += pad;
  auto px = [&](double x) { return kMargin + (x - x0) / (x1 - x0) * (kWidth - 2 * kMargin); };
  auto py = [&](double y) {
    const double v = log_y ? std::log10(y) : y;
    return kHeight - kMargin - (v - y0) / (y1 - y0) * (kHeight - 2 * kMargin);
  };

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
     << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<line x1=\"" << kMargin << "\" y1=\"" << kHeight - kMargin << "\" x2=\"" << kWidth - kMargin << "\" y2=\""
     << kHeight - kMargin << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << kMargin << "\" y1=\"" << kMargin << "\" x2=\"" << kMargin << "\" y2=\"" << kHeight - kMargin
     << "\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double v = y0 + (y1 - y0) * k / 4;
    const double y = kHeight - kMargin - k / 4.0 * (kHeight - 2 * kMargin);
    os << "<text x=\"" << kMargin - 6 << "\" y=\"" << y + 4 << "\" text-anchor=\"end\">"
       << (log_y ? "1e" + fmt(std::round(v * 10) / 10) : fmt(std::round(v * 1e4) / 1e4)) << "</text>\n";
  }
  if (xticks.empty()) {
    for (int k = 0; k <= 4; ++k) {
      const double v = x0 + (x1 - x0) * k / 4;
      os << "<text x=\"" << px(v) << "\" y=\"" << kHeight - kMargin + 16 << "\" text-anchor=\"middle\">"
         << fmt(std::round(v * 1e4) / 1e4) << "</text>\n";
    }
  } else {
    for (std::size_t k = 0; k < xticks.size(); ++k)
      os << "<text x=\"" << px(static_cast<double>(k)) << "\" y=\"" << kHeight - kMargin + 16
         << "\" text-anchor=\"middle\">" << xticks[k] << "</text>\n";
  }
  os << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 12 << "\" text-anchor=\"middle\">" << xlabel
     << "</text>\n";
  os << "<text x=\"16\" y=\"" << kHeight / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " << kHeight / 2
     << ")\">" << ylabel << "</text>\n";
  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kColors[s % 6];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < series[s].x.size(); ++i)
      os << (i ? " " : "") << px(series[s].x[i]) << "," << py(series[s].y[i]);
    os << "\"/>\n";
    for (std::size_t i = 0; i < series[s].x.size(); ++i)
      os << "<circle cx=\"" << px(series[s].x[i]) << "\" cy=\"" << py(series[s].y[i]) << "\" r=\"2.5\" fill=\""
         << color << "\"/>\n";
    os << "<text x=\"" << kWidth - kMargin - 4 << "\" y=\"" << kMargin + 14 * s << "\" text-anchor=\"end\" fill=\""
       << color << "\">" << series[s].name << "</text>\n";
  }
  os << "</svg>\n";
}

}  // namespace

void write_svg(const Table& t, PlotKind kind, std::ostream& os) {
  if (t.rows.empty()) throw ConfigError("plot: table has no rows");
  std::vector<Series> series;
  switch (kind) {
    case PlotKind::CdfOverlay: {
      const int sx = need(t, "s1");
      for (const char* name : {"mc", "fredholm", "probability"}) {
        const int c = t.column(name);
        if (c < 0) continue;
        Series s{name, {}, {}};
        for (std::size_t r = 0; r < t.rows.size(); ++r) {
          s.x.push_back(cell(t, r, sx));
          s.y.push_back(cell(t, r, c));
        }
        series.push_back(std::move(s));
      }
      if (series.empty()) throw ConfigError("plot: cdf-overlay needs an mc, fredholm or probability column");
      render(series, "s", "P(T <= s)", false, {}, os);
      return;
    }
    case PlotKind::ConvergenceLadder: {
      need(t, "rung");
      std::vector<std::string> ticks;
      for (const auto& row : t.rows) ticks.push_back(row[need(t, "rung")]);
      for (std::size_t c = 0; c < t.header.size(); ++c) {
        if (t.header[c].rfind("error", 0) != 0) continue;
        Series s{t.header[c], {}, {}};
        for (std::size_t r = 0; r < t.rows.size(); ++r) {
          const double v = cell(t, r, static_cast<int>(c));
          if (!(v > 0)) throw ConfigError("plot: convergence-ladder needs positive errors");
          s.x.push_back(static_cast<double>(r));
          s.y.push_back(v);
        }
        series.push_back(std::move(s));
      }
      if (series.empty()) throw ConfigError("plot: convergence-ladder needs error columns");
      render(series, "rung", "absolute error", true, ticks, os);
      return;
    }
    case PlotKind::KernelSlice: {
      const int yc = need(t, "y"), vc = need(t, "value");
      const int bc = t.column("backend");
      std::vector<std::string> names;
      for (std::size_t r = 0; r < t.rows.size(); ++r) {
        const std::string name = bc < 0 ? "value" : t.rows[r][bc];
        auto it = std::find(names.begin(), names.end(), name);
        if (it == names.end()) {
          names.push_back(name);
          series.push_back({name, {}, {}});
          it = names.end() - 1;
        }
        Series& s = series[it - names.begin()];
        s.x.push_back(cell(t, r, yc));
        s.y.push_back(cell(t, r, vc));
      }
      render(series, "y", "K", false, {}, os);
      return;
    }
  }
}

}  // namespace perclab
