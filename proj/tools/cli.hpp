#pragma once

// nulllag command-line driver. run() is the whole program; main() only
// forwards to it so tests can call it in-process.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace nulllag::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitError = 2;

enum class Format { json, text };

struct RunConfig {
  std::string command;
  std::filesystem::path input;
  std::optional<double> tol_abs;
  std::optional<double> tol_norm;
  int trials = 64;
  int degree = 3;
  std::uint64_t seed = 42;
  int order = 8;
  Format format = Format::json;
  std::string path = "auto";
  /// 1-based first component of a curl-free block; 0 for none.
  int curl_free = 0;
};

/// Strict: rejects unknown keys and wrongly typed values.
void apply_config_file(const std::filesystem::path& file, RunConfig& cfg, const std::vector<std::string>& explicit_flags);

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace nulllag::cli
