#include <iostream>
#include <string>
#include <vector>

#include "aode/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return aode::cli::run(args, std::cout, std::cerr, std::cin);
}
