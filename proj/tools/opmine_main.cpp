#include <iostream>
#include <string>
#include <vector>

#include "opmine/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return opmine::cli::run(args, std::cout, std::cerr);
}
