#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rgg::cli {

/// Bad configuration: unknown key, malformed value, missing required field.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Run configuration as "section.key" -> text, seeded with the full schema so
/// that every key is present (required keys start out empty).
///
/// Later sources win: schema defaults, figure recipe, --config file, --set.
class Config {
 public:
  Config();

  /// Parses an INI file; diagnostics carry the file name and line.
  void load_file(const std::string& path);
  /// "section.key=value"
  void assign(std::string_view assignment);
  void set(const std::string& key, std::string value);

  bool has_value(const std::string& key) const;
  const std::string& text(const std::string& key) const;
  /// Same as text() but throws ConfigError when the value is empty.
  const std::string& require(const std::string& key) const;

  double real(const std::string& key) const;
  std::uint64_t count(const std::string& key) const;
  bool flag(const std::string& key) const;
  /// Comma-separated integers and inclusive ranges "a:b".
  std::vector<std::uint64_t> count_list(const std::string& key) const;
  /// Comma-separated reals.
  std::vector<double> real_list(const std::string& key) const;

  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

 private:
  std::string& slot(const std::string& key, std::string_view origin);

  std::vector<std::pair<std::string, std::string>> entries_;
};

}  // namespace rgg::cli
