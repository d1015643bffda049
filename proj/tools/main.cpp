#include <iostream>
#include <string>
#include <vector>

#include "p1qft/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return p1qft::run_cli(args, std::cout, std::cerr);
}
