#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace charvar::cli {

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kInvalidInput = 2,
};

/// Validated run parameters; every field can come from a config file or a flag.
struct RunConfig {
  std::string command;
  std::string traces;
  std::string point;
  std::string word;
  std::string axis = "X";
  double eps = 0.1;
  std::size_t budget = 10000;
  int max_q = 7;
  int max_terms = 4;
  std::string coeffs = "1,-1,1/2,-1/2,2,-2";
  std::uint64_t seed = 0x5eed;
  std::string output;
  std::string mode = "exact";
  int n = 4;
  bool verify_list = false;
};

/// Flat `key = value` lines; '#' starts a comment. Throws on malformed lines.
std::map<std::string, std::string> parse_config_text(const std::string& text);

/// Applies known keys to `cfg`; unknown keys are an error.
void apply_config(RunConfig& cfg, const std::map<std::string, std::string>& values);

/// Runs cfg.command; data goes to `out` (or cfg.output), diagnostics to `err`.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Full command line entry point.
int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace charvar::cli
