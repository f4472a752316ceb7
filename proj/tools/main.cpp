#include <iostream>
#include <string>
#include <vector>

#include "condgrowth/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return condgrowth::cli::run(args, std::cout, std::cerr);
}
