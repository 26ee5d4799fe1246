#include <iostream>

#include "crosswalk/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return crosswalk::cli::run_cli(args, std::cout, std::cerr);
}
