#include <iostream>
#include <string>
#include <vector>

#include "edscorr/harness/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return edscorr::harness::run_cli(args, std::cout, std::cerr);
}
