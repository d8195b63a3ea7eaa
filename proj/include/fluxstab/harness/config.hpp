#ifndef FLUXSTAB_HARNESS_CONFIG_HPP_
#define FLUXSTAB_HARNESS_CONFIG_HPP_

#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fluxstab::harness {

/// Bad or unresolvable configuration; maps to exit status 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Flat key/value configuration.
///
///     # comment
///     key = value
///     [section]
///     key = value        # stored as section.key
///
/// Reads through the typed getters record the value used (including
/// defaults), which is what `resolved()` returns.
class Config {
 public:
  static Config parse(std::istream& is, const std::string& source = "<config>");
  static Config parse_file(const std::string& path);

  /// Sets or replaces a key (command-line override).
  void set(const std::string& key, const std::string& value);
  /// `key=value` form.
  void set_assignment(const std::string& assignment);

  bool has(const std::string& key) const { return entries_.count(key) > 0; }
  std::string get(const std::string& key) const;
  std::string get_or(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key) const;
  double get_double_or(const std::string& key, double fallback) const;
  long get_int_or(const std::string& key, long fallback) const;
  bool get_bool_or(const std::string& key, bool fallback) const;
  /// Comma- or space-separated numbers.
  std::vector<double> get_list_or(const std::string& key, std::vector<double> fallback) const;

  const std::map<std::string, std::string>& entries() const { return entries_; }
  /// Every key read so far with the value actually used.
  const std::map<std::string, std::string>& resolved() const { return resolved_; }
  /// Keys present in the config that no getter has read.
  std::vector<std::string> unused_keys() const;

 private:
  std::map<std::string, std::string> entries_;
  mutable std::map<std::string, std::string> resolved_;
};

double parse_double(const std::string& text, const std::string& what);
std::vector<double> parse_number_list(const std::string& text, const std::string& what);
std::string format_double(double v);

}  // namespace fluxstab::harness

#endif  // FLUXSTAB_HARNESS_CONFIG_HPP_
