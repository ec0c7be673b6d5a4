#include <fstream>
#include <iostream>

#include "lacuna/cli.hpp"
#include "lacuna/error.hpp"

int main(int argc, char** argv) {
  lacuna::cli::CliConfig config;
  try {
    config = lacuna::cli::parse_args(argc, argv);
  } catch (const lacuna::Error& e) {
    std::cerr << e.name() << ": " << e.what() << "\n";
    return lacuna::cli::kExitError;
  }

  if (config.help) {
    std::cout << *config.help;
    return 0;
  }
  const auto result = lacuna::cli::run(config);
  std::cerr << result.diagnostics;
  if (config.output_path) {
    std::ofstream out(*config.output_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write " << *config.output_path << "\n";
      return lacuna::cli::kExitError;
    }
    out << result.output;
  } else {
    std::cout << result.output;
  }
  return result.exit_code;
}
