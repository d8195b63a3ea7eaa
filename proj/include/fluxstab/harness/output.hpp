#ifndef FLUXSTAB_HARNESS_OUTPUT_HPP_
#define FLUXSTAB_HARNESS_OUTPUT_HPP_

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace fluxstab::harness {

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void add(std::vector<double> row);
  std::vector<double> column(const std::string& name) const;
  bool has_column(const std::string& name) const;
};

struct PlotSpec {
  std::string title;
  std::string x_column;
  std::vector<std::string> y_columns;
  bool loglog = false;
};

/// Resolved config as `# key = value` lines, then the header and rows with
/// every value printed as %.17g.
void write_csv(std::ostream& os, const std::map<std::string, std::string>& resolved,
               const Table& table);

/// Line plot of the requested columns. The first line is a version comment;
/// everything else depends only on the data.
void write_svg(std::ostream& os, const Table& table, const PlotSpec& plot);

}  // namespace fluxstab::harness

#endif  // FLUXSTAB_HARNESS_OUTPUT_HPP_
