#include <iostream>
#include <string>
#include <vector>

#include "mf/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv, argv + argc);
  return mf::run_cli(args, std::cin, std::cout, std::cerr);
}
