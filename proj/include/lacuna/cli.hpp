#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lacuna/sequence.hpp"

namespace lacuna::cli {

enum class Command { Check, Kernel, Certify, Split, Build, Verify, Corpus };
enum class Format { Json, Text };

struct CliConfig {
  Command command = Command::Check;
  std::optional<std::string> operator_path;
  std::optional<std::string> sequence_path;
  std::optional<std::string> certificate_path;
  std::optional<std::string> corpus_name;
  std::string corpus_part = "entry";  // entry | operator | sequence
  std::optional<Window> window;
  std::optional<std::int64_t> k;
  std::optional<std::int64_t> gap;
  std::int64_t budget = 1000;
  std::optional<std::int64_t> max_pieces;
  std::optional<std::string> output_path;
  Format format = Format::Json;
  std::optional<std::string> help;  // set when --help was requested
};

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitInconclusive = 2;

struct RunResult {
  int exit_code = kExitSuccess;
  std::string output;       // what goes to --out or stdout
  std::string diagnostics;  // what goes to stderr
};

/// Executes one command. Never throws; library errors map to exit code 1
/// with the error name in the diagnostics.
[[nodiscard]] RunResult run(const CliConfig& config);

/// Parses argv into a config. Throws Error(ParseError) on bad flags.
[[nodiscard]] CliConfig parse_args(int argc, const char* const* argv);

/// "LO:HI", either bound may be negative.
[[nodiscard]] Window parse_window(const std::string& text);

}  // namespace lacuna::cli
