#include <iostream>
#include <string>
#include <vector>

#include "bcover/cli_config.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return bcover::run_cli(args, std::cout, std::cerr);
}
