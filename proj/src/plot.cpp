#include "bousslab/harness.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <limits>
#include <string>

namespace bousslab {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 500.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 180.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;
constexpr std::array<const char*, 8> kPalette{"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                              "#ff7f0e", "#17becf", "#8c564b", "#e377c2"};

std::string fixed(double v, int digits = 2) {
  std::array<char, 48> buf{};
  const auto res =
      std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::fixed, digits);
  return std::string(buf.data(), res.ptr);
}

std::string label(double v) {
  std::array<char, 48> buf{};
  const auto res =
      std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 4);
  return std::string(buf.data(), res.ptr);
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void widen() {
    if (!(hi > lo)) {
      const double pad = lo == 0.0 ? 1.0 : 0.5 * std::abs(lo);
      lo -= pad;
      hi += pad;
    }
  }
};

}  // namespace

std::string render_svg(const CsvTable& table, const PlotOptions& options) {
  if (options.columns.empty()) throw UsageError("plot needs at least one column");
  if (table.rows.empty()) throw UsageError("csv has no data rows");
  const std::size_t t_col = table.column_index("t");
  std::vector<std::size_t> cols;
  for (const auto& name : options.columns) cols.push_back(table.column_index(name));

  Range tr, yr;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    tr.add(table.rows[i][t_col]);
    for (std::size_t c = 0; c < cols.size(); ++c) {
      const double v = table.rows[i][cols[c]];
      if (options.log_scale && !(v > 0.0))
        throw UsageError("log axis: column '" + options.columns[c] + "' has nonpositive value " +
                         label(v) + " in data row " + std::to_string(i + 1));
      yr.add(options.log_scale ? std::log10(v) : v);
    }
  }
  tr.widen();
  yr.widen();

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto x_of = [&](double t) { return kLeft + (t - tr.lo) / (tr.hi - tr.lo) * plot_w; };
  auto y_of = [&](double v) { return kTop + (yr.hi - v) / (yr.hi - yr.lo) * plot_h; };

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed(kWidth, 0) +
         "\" height=\"" + fixed(kHeight, 0) + "\" viewBox=\"0 0 " + fixed(kWidth, 0) + " " +
         fixed(kHeight, 0) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!options.title.empty())
    svg += "<text x=\"" + fixed(kLeft) + "\" y=\"24\" font-size=\"14\">" +
           escape(options.title) + "</text>\n";
  svg += "<rect x=\"" + fixed(kLeft) + "\" y=\"" + fixed(kTop) + "\" width=\"" + fixed(plot_w) +
         "\" height=\"" + fixed(plot_h) + "\" fill=\"none\" stroke=\"black\"/>\n";

  for (int i = 0; i <= 4; ++i) {
    const double tv = tr.lo + (tr.hi - tr.lo) * i / 4.0;
    const double yv = yr.lo + (yr.hi - yr.lo) * i / 4.0;
    svg += "<text x=\"" + fixed(x_of(tv)) + "\" y=\"" + fixed(kHeight - kBottom + 18) +
           "\" text-anchor=\"middle\">" + label(tv) + "</text>\n";
    const std::string ytext = options.log_scale ? "1e" + label(yv) : label(yv);
    svg += "<text x=\"" + fixed(kLeft - 6) + "\" y=\"" + fixed(y_of(yv) + 4) +
           "\" text-anchor=\"end\">" + ytext + "</text>\n";
  }
  svg += "<text x=\"" + fixed(kLeft + plot_w / 2) + "\" y=\"" + fixed(kHeight - 10) +
         "\" text-anchor=\"middle\">t</text>\n";

  for (std::size_t c = 0; c < cols.size(); ++c) {
    const char* colour = kPalette[c % kPalette.size()];
    std::string points;
    for (const auto& row : table.rows) {
      const double v = options.log_scale ? std::log10(row[cols[c]]) : row[cols[c]];
      if (!points.empty()) points += ' ';
      points += fixed(x_of(row[t_col])) + "," + fixed(y_of(v));
    }
    svg += "<polyline fill=\"none\" stroke=\"" + std::string(colour) +
           "\" stroke-width=\"1.5\" points=\"" + points + "\"/>\n";
    const double ly = kTop + 16.0 * (c + 1);
    svg += "<line x1=\"" + fixed(kWidth - kRight + 12) + "\" y1=\"" + fixed(ly - 4) +
           "\" x2=\"" + fixed(kWidth - kRight + 32) + "\" y2=\"" + fixed(ly - 4) +
           "\" stroke=\"" + colour + "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + fixed(kWidth - kRight + 38) + "\" y=\"" + fixed(ly) + "\">" +
           escape(options.columns[c]) + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace bousslab
