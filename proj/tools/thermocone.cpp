#include <iostream>

#include "thermocone/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return thermocone::cli::run(args, std::cout, std::cerr);
}
