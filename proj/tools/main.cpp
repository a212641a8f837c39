#include <iostream>
#include <string>
#include <vector>

#include "pkcol/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return pkcol::cli::dispatch(args, std::cout, std::cerr);
}
