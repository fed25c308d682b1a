#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  const auto result = ermcode::cli::run(std::vector<std::string>(argv, argv + argc));
  if (!result.diagnostics.empty()) std::cerr << result.diagnostics << "\n";
  if (!result.ok) return result.exit_code;
  if (!result.text.empty())
    std::cout << result.text;
  else
    std::cout << result.payload.dump() << "\n";
  return result.exit_code;
}
