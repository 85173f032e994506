#include <iostream>
#include <string>
#include <vector>

#include "padicmp/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  auto result = padicmp::cli::run(args);
  (result.exit_code == 2 ? std::cerr : std::cout) << result.text() << '\n';
  return result.exit_code;
}
