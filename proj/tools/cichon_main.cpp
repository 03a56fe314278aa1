#include <iostream>
#include <string>
#include <vector>

#include "cichon/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cichon::cli::run(args, std::cout, std::cerr);
}
