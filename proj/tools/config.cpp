#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace rgg::cli {

namespace {

struct SchemaEntry {
  const char* key;
  const char* fallback;
};

// Empty fallback means the key has no default.
constexpr SchemaEntry kSchema[] = {
    {"input.kind", "fock"},       // fock | coherent | thermal | squeezed | custom
    {"input.N", "0"},             // fock photon number
    {"input.mean", "0"},          // coherent / thermal mean; squeezed total mean when alpha is unset
    {"input.alpha", ""},          // squeezed |alpha|
    {"input.alpha_phase", "0"},
    {"input.r", ""},              // squeezed r
    {"input.theta", "0"},
    {"input.pmf", ""},            // custom pmf, comma-separated
    {"scatter.M", ""},
    {"scatter.stages", "1"},
    {"scatter.approx", "false"},
    {"gn.order", "3"},
    {"gn.sweep", "none"},         // none | N | M | theta
    {"gn.values", ""},            // sweep values for N or M
    {"gn.theta_points", "64"},
    {"mc.frames", "1000000"},
    {"mc.seed", "1"},
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) parts.push_back(trim(cur));
  return parts;
}

template <class T>
bool parse_number(const std::string& s, T& out) {
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && first != last;
}

// Line of "key" inside "[section]" of an INI file, 0 if not found.
std::size_t find_line(const std::string& path, const std::string& section, const std::string& key) {
  std::ifstream in(path);
  std::string line, current;
  for (std::size_t no = 1; std::getline(in, line); ++no) {
    const std::string t = trim(line);
    if (t.empty() || t[0] == ';' || t[0] == '#') continue;
    if (t.front() == '[' && t.back() == ']') {
      current = trim(std::string_view(t).substr(1, t.size() - 2));
    } else if (current == section && trim(t.substr(0, t.find('='))) == key) {
      return no;
    }
  }
  return 0;
}

}  // namespace

Config::Config() {
  for (const auto& e : kSchema) entries_.emplace_back(e.key, e.fallback);
}

std::string& Config::slot(const std::string& key, std::string_view origin) {
  auto it = std::find_if(entries_.begin(), entries_.end(), [&](const auto& kv) { return kv.first == key; });
  if (it == entries_.end()) throw ConfigError(std::string(origin) + ": unknown key '" + key + "'");
  return it->second;
}

void Config::set(const std::string& key, std::string value) { slot(key, "config") = std::move(value); }

void Config::assign(std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos)
    throw ConfigError("--set '" + std::string(assignment) + "': expected section.key=value");
  const std::string key = trim(assignment.substr(0, eq));
  slot(key, "--set") = trim(assignment.substr(eq + 1));
}

void Config::load_file(const std::string& path) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    pt::read_ini(path, tree);
  } catch (const pt::ini_parser_error& e) {
    std::ostringstream os;
    os << path;
    if (e.line() > 0) os << ":" << e.line();
    os << ": " << e.message();
    throw ConfigError(os.str());
  }
  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty()) {
      const std::size_t line = find_line(path, "", section);
      throw ConfigError(path + ":" + std::to_string(line) + ": key '" + section + "' must live in a section");
    }
    for (const auto& [key, value] : body) {
      const std::string full = section + "." + key;
      const std::string origin = path + ":" + std::to_string(find_line(path, section, key));
      slot(full, origin) = trim(value.data());
    }
  }
}

bool Config::has_value(const std::string& key) const { return !text(key).empty(); }

const std::string& Config::text(const std::string& key) const {
  auto it = std::find_if(entries_.begin(), entries_.end(), [&](const auto& kv) { return kv.first == key; });
  if (it == entries_.end()) throw ConfigError("unknown key '" + key + "'");
  return it->second;
}

const std::string& Config::require(const std::string& key) const {
  const std::string& v = text(key);
  if (v.empty()) throw ConfigError("field " + key + ": required but not set");
  return v;
}

double Config::real(const std::string& key) const {
  const std::string& v = require(key);
  double out = 0.0;
  if (!parse_number(v, out)) throw ConfigError("field " + key + ": expected a real number, got '" + v + "'");
  return out;
}

std::uint64_t Config::count(const std::string& key) const {
  const std::string& v = require(key);
  std::uint64_t out = 0;
  if (!parse_number(v, out))
    throw ConfigError("field " + key + ": expected a nonnegative integer, got '" + v + "'");
  return out;
}

bool Config::flag(const std::string& key) const {
  std::string v = require(key);
  std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return std::tolower(c); });
  if (v == "true" || v == "yes" || v == "1" || v == "on") return true;
  if (v == "false" || v == "no" || v == "0" || v == "off") return false;
  throw ConfigError("field " + key + ": expected true or false, got '" + v + "'");
}

std::vector<std::uint64_t> Config::count_list(const std::string& key) const {
  std::vector<std::uint64_t> out;
  for (const auto& item : split(require(key), ',')) {
    const auto colon = item.find(':');
    std::uint64_t lo = 0, hi = 0;
    const bool ok = colon == std::string::npos
                        ? parse_number(item, lo) && ((hi = lo), true)
                        : parse_number(trim(item.substr(0, colon)), lo) &&
                              parse_number(trim(item.substr(colon + 1)), hi) && lo <= hi;
    if (!ok) throw ConfigError("field " + key + ": bad list item '" + item + "'");
    if (hi - lo > 1000000) throw ConfigError("field " + key + ": range '" + item + "' is too long");
    for (std::uint64_t v = lo; v <= hi; ++v) out.push_back(v);
  }
  return out;
}

std::vector<double> Config::real_list(const std::string& key) const {
  std::vector<double> out;
  for (const auto& item : split(require(key), ',')) {
    double v = 0.0;
    if (!parse_number(item, v)) throw ConfigError("field " + key + ": bad list item '" + item + "'");
    out.push_back(v);
  }
  return out;
}

}  // namespace rgg::cli
