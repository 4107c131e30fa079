#pragma once

#include <boost/property_tree/ptree.hpp>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "perclab/env.hpp"

namespace perclab {

// Malformed or missing configuration; the CLI maps it to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// INI file with sections; keys are addressed as "section.key".
// Lists are comma separated; "|" separates the per-time lists of a grid.
class Config {
 public:
  Config() = default;
  static Config load(const std::string& path);
  static Config parse(std::istream& is);
  static Config parse_string(const std::string& text);

  bool has(const std::string& key) const;
  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  long long get_int(const std::string& key) const;
  long long get_int(const std::string& key, long long fallback) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<int> get_int_list(const std::string& key) const;
  std::vector<double> get_double_list(const std::string& key) const;
  // "a,b | c,d" -> {{a, b}, {c, d}}
  std::vector<std::vector<double>> get_grid(const std::string& key) const;

  void set(const std::string& key, const std::string& value);

  // [spec] n, nu, ell
  LayeredSpec spec() const;

 private:
  boost::property_tree::ptree tree_;
};

double parse_double(const std::string& text, const std::string& what);
long long parse_int(const std::string& text, const std::string& what);
std::vector<std::string> split(const std::string& text, char sep);

}  // namespace perclab
