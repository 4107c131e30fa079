#include "perclab/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace perclab {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(text);
  while (std::getline(is, cur, sep)) out.push_back(trim(cur));
  if (!text.empty() && text.back() == sep) out.push_back("");
  return out;
}

double parse_double(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  if (t.empty()) throw ConfigError(what + ": empty number");
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(t.c_str(), &end);
  if (errno != 0 || end != t.c_str() + t.size()) throw ConfigError(what + ": not a number: '" + t + "'");
  return v;
}

long long parse_int(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  if (t.empty()) throw ConfigError(what + ": empty integer");
  char* end = nullptr;
  errno = 0;
  const long long v = std::strtoll(t.c_str(), &end, 10);
  if (errno != 0 || end != t.c_str() + t.size()) throw ConfigError(what + ": not an integer: '" + t + "'");
  return v;
}

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse(in);
}

Config Config::parse(std::istream& is) {
  Config c;
  try {
    boost::property_tree::ini_parser::read_ini(is, c.tree_);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError(std::string("config syntax: ") + e.what());
  }
  return c;
}

Config Config::parse_string(const std::string& text) {
  std::istringstream is(text);
  return parse(is);
}

bool Config::has(const std::string& key) const { return tree_.get_optional<std::string>(key).has_value(); }

std::string Config::get_string(const std::string& key) const {
  const auto v = tree_.get_optional<std::string>(key);
  if (!v) throw ConfigError("missing config key '" + key + "'");
  return trim(*v);
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
  return has(key) ? get_string(key) : fallback;
}

long long Config::get_int(const std::string& key) const { return parse_int(get_string(key), key); }
long long Config::get_int(const std::string& key, long long fallback) const {
  return has(key) ? get_int(key) : fallback;
}
double Config::get_double(const std::string& key) const { return parse_double(get_string(key), key); }
double Config::get_double(const std::string& key, double fallback) const {
  return has(key) ? get_double(key) : fallback;
}

bool Config::get_bool(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const std::string v = get_string(key);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError(key + ": expected true or false, got '" + v + "'");
}

std::vector<int> Config::get_int_list(const std::string& key) const {
  std::vector<int> out;
  for (const auto& s : split(get_string(key), ',')) out.push_back(static_cast<int>(parse_int(s, key)));
  if (out.empty()) throw ConfigError(key + ": empty list");
  return out;
}

std::vector<double> Config::get_double_list(const std::string& key) const {
  std::vector<double> out;
  for (const auto& s : split(get_string(key), ',')) out.push_back(parse_double(s, key));
  if (out.empty()) throw ConfigError(key + ": empty list");
  return out;
}

std::vector<std::vector<double>> Config::get_grid(const std::string& key) const {
  std::vector<std::vector<double>> out;
  for (const auto& part : split(get_string(key), '|')) {
    std::vector<double> row;
    for (const auto& s : split(part, ',')) row.push_back(parse_double(s, key));
    if (row.empty()) throw ConfigError(key + ": empty list in grid");
    out.push_back(row);
  }
  return out;
}

void Config::set(const std::string& key, const std::string& value) { tree_.put(key, value); }

LayeredSpec Config::spec() const {
  const int n = static_cast<int>(get_int("spec.n"));
  try {
    return LayeredSpec(n, get_int_list("spec.nu"), get_int_list("spec.ell"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("spec: ") + e.what());
  }
}

}  // namespace perclab
