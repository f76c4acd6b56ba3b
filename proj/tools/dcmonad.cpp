#include <iostream>

#include "dcmonad/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return dcmonad::run(args, std::cout, std::cerr);
}
