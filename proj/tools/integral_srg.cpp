#include <iostream>
#include <string>
#include <vector>

#include "isrg/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return isrg::cli::run_args(args, std::cout, std::cerr);
}
