#include <iostream>
#include <string>
#include <vector>

#include "catalytic/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return catalytic::cli::run(args, std::cout, std::cerr);
}
