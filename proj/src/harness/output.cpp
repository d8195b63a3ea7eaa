#include "fluxstab/harness/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "fluxstab/harness/config.hpp"

namespace fluxstab::harness {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kMargin = 60.0;
const char* kColours[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

std::string num(double v, int digits = 6) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '&') out += "&amp;";
    else out += c;
  }
  return out;
}

}  // namespace

void Table::add(std::vector<double> row) {
  if (row.size() != columns.size()) throw std::logic_error("Table: row width mismatch");
  rows.push_back(std::move(row));
}

bool Table::has_column(const std::string& name) const {
  return std::find(columns.begin(), columns.end(), name) != columns.end();
}

std::vector<double> Table::column(const std::string& name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw std::logic_error("Table: no column '" + name + "'");
  const std::size_t j = static_cast<std::size_t>(it - columns.begin());
  std::vector<double> out;
  for (const auto& r : rows) out.push_back(r[j]);
  return out;
}

void write_csv(std::ostream& os, const std::map<std::string, std::string>& resolved,
               const Table& table) {
  for (const auto& [k, v] : resolved) os << "# " << k << " = " << v << '\n';
  for (std::size_t j = 0; j < table.columns.size(); ++j) {
    os << (j ? "," : "") << table.columns[j];
  }
  os << '\n';
  for (const auto& r : table.rows) {
    for (std::size_t j = 0; j < r.size(); ++j) os << (j ? "," : "") << format_double(r[j]);
    os << '\n';
  }
}

void write_svg(std::ostream& os, const Table& table, const PlotSpec& plot) {
  const auto xs = table.column(plot.x_column);
  std::vector<std::vector<double>> ys;
  for (const auto& c : plot.y_columns) ys.push_back(table.column(c));
  auto tx = [&](double v) { return plot.loglog ? std::log10(v) : v; };
  auto usable = [&](double v) { return std::isfinite(v) && (!plot.loglog || v > 0.0); };

  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!usable(xs[i])) continue;
    for (const auto& y : ys) {
      if (!usable(y[i])) continue;
      x0 = std::min(x0, tx(xs[i]));
      x1 = std::max(x1, tx(xs[i]));
      y0 = std::min(y0, tx(y[i]));
      y1 = std::max(y1, tx(y[i]));
    }
  }
  if (!(x0 <= x1)) x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 1.0;
  if (x1 == x0) x1 = x0 + 1.0;
  if (y1 == y0) y1 = y0 + 1.0;
  auto px = [&](double v) { return kMargin + (tx(v) - x0) / (x1 - x0) * (kWidth - 2 * kMargin); };
  auto py = [&](double v) {
    return kHeight - kMargin - (tx(v) - y0) / (y1 - y0) * (kHeight - 2 * kMargin);
  };
  auto label = [&](double v) { return plot.loglog ? "1e" + num(v, 3) : num(v); };

  os << "<!-- fluxstab 1.0 -->\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
     << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\">" << escape(plot.title)
     << "</text>\n";
  os << "<polyline fill=\"none\" stroke=\"black\" points=\"" << kMargin << ',' << kMargin << ' '
     << kMargin << ',' << kHeight - kMargin << ' ' << kWidth - kMargin << ','
     << kHeight - kMargin << "\"/>\n";
  os << "<text x=\"" << kMargin << "\" y=\"" << kHeight - kMargin + 18 << "\">" << label(x0)
     << "</text>\n";
  os << "<text x=\"" << kWidth - kMargin << "\" y=\"" << kHeight - kMargin + 18
     << "\" text-anchor=\"end\">" << label(x1) << "</text>\n";
  os << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 16 << "\" text-anchor=\"middle\">"
     << escape(plot.x_column) << (plot.loglog ? " (log)" : "") << "</text>\n";
  os << "<text x=\"" << kMargin - 6 << "\" y=\"" << kHeight - kMargin
     << "\" text-anchor=\"end\">" << label(y0) << "</text>\n";
  os << "<text x=\"" << kMargin - 6 << "\" y=\"" << kMargin + 4 << "\" text-anchor=\"end\">"
     << label(y1) << "</text>\n";
  for (std::size_t k = 0; k < ys.size(); ++k) {
    const char* colour = kColours[k % 5];
    os << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (!usable(xs[i]) || !usable(ys[k][i])) continue;
      os << (first ? "" : " ") << num(px(xs[i]), 7) << ',' << num(py(ys[k][i]), 7);
      first = false;
    }
    os << "\"/>\n";
    os << "<text x=\"" << kWidth - kMargin << "\" y=\"" << kMargin + 16 * k
       << "\" text-anchor=\"end\" fill=\"" << colour << "\">" << escape(plot.y_columns[k])
       << "</text>\n";
  }
  os << "</svg>\n";
}

}  // namespace fluxstab::harness
