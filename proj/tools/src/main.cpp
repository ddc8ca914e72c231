#include <iostream>
#include <string>
#include <vector>

#include "htype_cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return htype::cli::run(args, std::cout, std::cerr);
}
