#include "tipanchor/cli/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "tipanchor/errors.hpp"

namespace tipanchor::cli {
namespace {

std::string Printf(const char* format, double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), format, value);
  return buffer;
}

std::string QuoteCsv(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string quoted = "\"";
  for (char c : field) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

std::string CellText(const Cell& cell) {
  if (const double* number = std::get_if<double>(&cell)) return FormatCsvNumber(*number);
  return QuoteCsv(std::get<std::string>(cell));
}

void AppendRow(std::string& out, const std::vector<Cell>& row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i > 0) out += ',';
    out += CellText(row[i]);
  }
  out += "\r\n";
}

std::string EscapeXml(const std::string& text) {
  std::string out;
  for (char c : text) {
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

// 1, 2 or 5 times a power of ten, close to span / 5.
double TickStep(double span) {
  if (!(span > 0.0)) return 1.0;
  const double raw = span / 5.0;
  const double magnitude = std::pow(10.0, std::floor(std::log10(raw)));
  const double scaled = raw / magnitude;
  const double nice = scaled < 1.5 ? 1.0 : scaled < 3.5 ? 2.0 : scaled < 7.5 ? 5.0 : 10.0;
  return nice * magnitude;
}

struct Range {
  double low = std::numeric_limits<double>::infinity();
  double high = -std::numeric_limits<double>::infinity();
  void Add(double v) {
    if (!std::isfinite(v)) return;
    low = std::min(low, v);
    high = std::max(high, v);
  }
  void Finish() {
    if (!std::isfinite(low)) low = 0.0, high = 1.0;
    if (high == low) {
      const double pad = low == 0.0 ? 1.0 : std::abs(low) * 0.1;
      low -= pad;
      high += pad;
    }
  }
};

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#ff7f0e", "#2ca02c", "#9467bd",
                                    "#8c564b"};

}  // namespace

std::string FormatCsvNumber(double value) {
  if (value == 0.0) return "0";
  return Printf("%.6g", value);
}

std::string FormatSummaryNumber(double value) {
  if (value == 0.0) return "0";
  return Printf("%.4g", value);
}

std::string RenderCsv(const Table& table) {
  std::string out;
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i > 0) out += ',';
    out += QuoteCsv(table.columns[i]);
  }
  out += "\r\n";
  for (const auto& row : table.rows) AppendRow(out, row);
  if (table.footer) AppendRow(out, *table.footer);
  return out;
}

std::string RenderSvg(const Chart& chart) {
  constexpr double kWidth = 720.0;
  constexpr double kHeight = 480.0;
  constexpr double kLeft = 80.0;
  constexpr double kRight = 170.0;
  constexpr double kTop = 40.0;
  constexpr double kBottom = 60.0;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;

  Range xr;
  Range yr;
  yr.Add(0.0);
  for (const Series& s : chart.series) {
    for (double v : s.x) xr.Add(v);
    for (double v : s.y) yr.Add(v);
  }
  for (const Marker& m : chart.markers) {
    xr.Add(m.x);
    yr.Add(m.y);
  }
  xr.Finish();
  yr.Finish();
  const double x_step = TickStep(xr.high - xr.low);
  const double y_step = TickStep(yr.high - yr.low);
  const double x0 = std::floor(xr.low / x_step) * x_step;
  const double x1 = std::ceil(xr.high / x_step) * x_step;
  const double y0 = std::floor(yr.low / y_step) * y_step;
  const double y1 = std::ceil(yr.high / y_step) * y_step;
  auto px = [&](double x) { return kLeft + (x - x0) / (x1 - x0) * plot_w; };
  auto py = [&](double y) { return kTop + (y1 - y) / (y1 - y0) * plot_h; };
  auto coord = [](double v) { return Printf("%.2f", v); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << coord(kLeft + plot_w / 2) << "\" y=\"24\" text-anchor=\"middle\" "
      << "font-size=\"15\">" << EscapeXml(chart.title) << "</text>\n";

  // Grid and ticks.
  for (int i = 0; x0 + i * x_step <= x1 + 0.5 * x_step; ++i) {
    const double x = x0 + i * x_step;
    svg << "<line x1=\"" << coord(px(x)) << "\" y1=\"" << coord(kTop) << "\" x2=\""
        << coord(px(x)) << "\" y2=\"" << coord(kTop + plot_h)
        << "\" stroke=\"#e0e0e0\"/>\n";
    svg << "<text x=\"" << coord(px(x)) << "\" y=\"" << coord(kTop + plot_h + 18)
        << "\" text-anchor=\"middle\">" << FormatCsvNumber(std::abs(x) < 1e-12 * x_step ? 0 : x)
        << "</text>\n";
  }
  for (int i = 0; y0 + i * y_step <= y1 + 0.5 * y_step; ++i) {
    const double y = y0 + i * y_step;
    svg << "<line x1=\"" << coord(kLeft) << "\" y1=\"" << coord(py(y)) << "\" x2=\""
        << coord(kLeft + plot_w) << "\" y2=\"" << coord(py(y)) << "\" stroke=\"#e0e0e0\"/>\n";
    svg << "<text x=\"" << coord(kLeft - 8) << "\" y=\"" << coord(py(y) + 4)
        << "\" text-anchor=\"end\">" << FormatCsvNumber(std::abs(y) < 1e-12 * y_step ? 0 : y)
        << "</text>\n";
  }
  svg << "<rect x=\"" << coord(kLeft) << "\" y=\"" << coord(kTop) << "\" width=\""
      << coord(plot_w) << "\" height=\"" << coord(plot_h)
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  if (y0 < 0.0 && y1 > 0.0) {
    svg << "<line x1=\"" << coord(kLeft) << "\" y1=\"" << coord(py(0.0)) << "\" x2=\""
        << coord(kLeft + plot_w) << "\" y2=\"" << coord(py(0.0))
        << "\" stroke=\"black\" stroke-dasharray=\"4 3\"/>\n";
  }
  svg << "<text x=\"" << coord(kLeft + plot_w / 2) << "\" y=\"" << coord(kHeight - 16)
      << "\" text-anchor=\"middle\">" << EscapeXml(chart.x_label) << "</text>\n";
  svg << "<text x=\"18\" y=\"" << coord(kTop + plot_h / 2) << "\" text-anchor=\"middle\" "
      << "transform=\"rotate(-90 18 " << coord(kTop + plot_h / 2) << ")\">"
      << EscapeXml(chart.y_label) << "</text>\n";

  for (std::size_t s = 0; s < chart.series.size(); ++s) {
    const Series& series = chart.series[s];
    const char* color = kPalette[s % std::size(kPalette)];
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < series.x.size() && i < series.y.size(); ++i) {
      if (i > 0) svg << ' ';
      svg << coord(px(series.x[i])) << ',' << coord(py(series.y[i]));
    }
    svg << "\"/>\n";
    const double legend_y = kTop + 10 + 20.0 * static_cast<double>(s);
    svg << "<line x1=\"" << coord(kLeft + plot_w + 12) << "\" y1=\"" << coord(legend_y)
        << "\" x2=\"" << coord(kLeft + plot_w + 36) << "\" y2=\"" << coord(legend_y)
        << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << coord(kLeft + plot_w + 42) << "\" y=\"" << coord(legend_y + 4)
        << "\">" << EscapeXml(series.name) << "</text>\n";
  }
  for (const Marker& m : chart.markers) {
    svg << "<line x1=\"" << coord(px(m.x)) << "\" y1=\"" << coord(kTop) << "\" x2=\""
        << coord(px(m.x)) << "\" y2=\"" << coord(kTop + plot_h)
        << "\" stroke=\"#555555\" stroke-dasharray=\"2 3\"/>\n";
    svg << "<circle cx=\"" << coord(px(m.x)) << "\" cy=\"" << coord(py(m.y))
        << "\" r=\"4\" fill=\"black\"/>\n";
    svg << "<text x=\"" << coord(px(m.x) + 6) << "\" y=\"" << coord(py(m.y) - 8) << "\">"
        << EscapeXml(m.label) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string RenderSummary(const Report& report) {
  std::string out;
  for (const auto& [key, value] : report.summary) out += key + ": " + value + "\n";
  return out;
}

std::string Render(const Report& report, OutputFormat format) {
  switch (format) {
    case OutputFormat::kCsv:
      return RenderCsv(report.table);
    case OutputFormat::kSvg:
      if (!report.chart) throw ContractError(report.title + " has no chart to render as SVG");
      return RenderSvg(*report.chart);
    case OutputFormat::kSummary:
      return RenderSummary(report);
  }
  return {};
}

}  // namespace tipanchor::cli
