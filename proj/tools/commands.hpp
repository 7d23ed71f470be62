#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "config.hpp"

namespace rgg::cli {

enum ExitCode : int { kOk = 0, kConfigError = 2, kNumericError = 3, kIoError = 4 };

/// Failure to create or write an output file.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Figure recipes accepted by `figure`.
const std::vector<std::string>& figure_names();

/// Presets a figure applies before the config file and --set overrides.
void apply_figure_recipe(const std::string& figure, Config& cfg);

/// Each command writes its files into `out_dir` and returns their paths.
std::vector<std::filesystem::path> cmd_scatter(const Config& cfg, const std::filesystem::path& out_dir,
                                               const std::string& stem = "scatter");
std::vector<std::filesystem::path> cmd_gn(const Config& cfg, const std::filesystem::path& out_dir,
                                          const std::string& stem = "gn");
std::vector<std::filesystem::path> cmd_plimit(const Config& cfg, const std::filesystem::path& out_dir,
                                              const std::string& stem = "plimit");
std::vector<std::filesystem::path> cmd_mc(const Config& cfg, const std::filesystem::path& out_dir,
                                          const std::string& stem = "mc");
std::vector<std::filesystem::path> cmd_figure(const std::string& figure, const Config& cfg,
                                              const std::filesystem::path& out_dir);

/// Full command line entry point; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rgg::cli
