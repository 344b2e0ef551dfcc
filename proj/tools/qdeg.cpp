#include <iostream>
#include <string>
#include <vector>

#include "qdeg/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return qdeg::run_cli(args, std::cout, std::cerr);
}
