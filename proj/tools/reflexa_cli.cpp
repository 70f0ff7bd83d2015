#include <iostream>

#include "reflexa/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return reflexa::cli_main(args, std::cout, std::cerr);
}
