#include <iostream>
#include <string>
#include <vector>

#include "rimg/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return rimg::run_cli(args, std::cout, std::cerr);
}
