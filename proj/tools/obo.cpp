#include <iostream>
#include <string>
#include <vector>

#include "obo/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return obo::cli::run(args, std::cout, std::cerr);
}
