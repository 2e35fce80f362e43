#include <iostream>

#include "ainf/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ainf::cli::run(args, std::cout, std::cerr);
}
