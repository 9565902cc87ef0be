#include <iostream>
#include <string>
#include <vector>

#include "dimtrunc/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return dimtrunc::run_cli(args, std::cout, std::cerr);
}
