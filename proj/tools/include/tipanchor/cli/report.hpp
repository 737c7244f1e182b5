#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace tipanchor::cli {

enum class OutputFormat { kCsv, kSvg, kSummary };

using Cell = std::variant<double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::optional<std::vector<Cell>> footer;
};

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

struct Marker {
  double x = 0.0;
  double y = 0.0;
  std::string label;
};

struct Chart {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
  std::vector<Marker> markers;
};

struct Report {
  std::string title;
  std::vector<std::pair<std::string, std::string>> summary;  // fixed order
  Table table;
  std::optional<Chart> chart;
};

// Six significant digits, as used in every CSV cell.
std::string FormatCsvNumber(double value);
// Four significant digits for the human summary.
std::string FormatSummaryNumber(double value);

std::string RenderCsv(const Table& table);
std::string RenderSvg(const Chart& chart);
std::string RenderSummary(const Report& report);

// Renders `report` in `format`; throws ContractError when the report has no
// chart and SVG is requested.
std::string Render(const Report& report, OutputFormat format);

}  // namespace tipanchor::cli
