#include "fluxstab/harness/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace fluxstab::harness {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  try {
    std::size_t used = 0;
    const double v = std::stod(t, &used);
    if (used == t.size()) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError(what + ": expected a number, got '" + text + "'");
}

std::vector<double> parse_number_list(const std::string& text, const std::string& what) {
  std::string t = text;
  for (char& c : t) {
    if (c == ',' || c == ';') c = ' ';
  }
  std::istringstream is(t);
  std::vector<double> out;
  std::string tok;
  while (is >> tok) out.push_back(parse_double(tok, what));
  if (out.empty()) throw ConfigError(what + ": empty list");
  return out;
}

Config Config::parse(std::istream& is, const std::string& source) {
  Config c;
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = source + ":" + std::to_string(lineno);
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(where + ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(where + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError(where + ": empty key");
    c.set(section.empty() ? key : section + "." + key, trim(line.substr(eq + 1)));
  }
  return c;
}

Config Config::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse(in, path);
}

void Config::set(const std::string& key, const std::string& value) { entries_[key] = value; }

void Config::set_assignment(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ConfigError("expected key=value, got '" + assignment + "'");
  }
  set(trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

std::string Config::get(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) throw ConfigError("missing required key '" + key + "'");
  resolved_[key] = it->second;
  return it->second;
}

std::string Config::get_or(const std::string& key, const std::string& fallback) const {
  const auto it = entries_.find(key);
  const std::string v = it == entries_.end() ? fallback : it->second;
  resolved_[key] = v;
  return v;
}

double Config::get_double(const std::string& key) const { return parse_double(get(key), key); }

double Config::get_double_or(const std::string& key, double fallback) const {
  return parse_double(get_or(key, format_double(fallback)), key);
}

long Config::get_int_or(const std::string& key, long fallback) const {
  const double v = get_double_or(key, static_cast<double>(fallback));
  if (v != static_cast<double>(static_cast<long>(v))) throw ConfigError(key + ": expected an integer");
  return static_cast<long>(v);
}

bool Config::get_bool_or(const std::string& key, bool fallback) const {
  const std::string v = get_or(key, fallback ? "true" : "false");
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError(key + ": expected true/false, got '" + v + "'");
}

std::vector<double> Config::get_list_or(const std::string& key, std::vector<double> fallback) const {
  if (!has(key)) {
    std::string s;
    for (std::size_t i = 0; i < fallback.size(); ++i) s += (i ? "," : "") + format_double(fallback[i]);
    resolved_[key] = s;
    return fallback;
  }
  return parse_number_list(get(key), key);
}

std::vector<std::string> Config::unused_keys() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : entries_) {
    if (!resolved_.count(k)) out.push_back(k);
  }
  return out;
}

}  // namespace fluxstab::harness
