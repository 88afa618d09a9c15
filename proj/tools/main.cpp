#include <iostream>
#include <string>
#include <vector>

#include "dcopkit/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return dcopkit::run_cli(args, std::cout, std::cerr);
}
