#include <iostream>
#include <string>
#include <vector>

#include "capbound/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv, argv + argc);
  return capbound::run(args, std::cout, std::cerr);
}
