#include <iostream>
#include <string>
#include <vector>

#include "gfbimap/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return gfbimap::cli_dispatch(args, std::cout, std::cerr);
}
