#include <iostream>
#include <string>
#include <vector>

#include "moebius/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return moebius::cli::main_entry(args, std::cout, std::cerr);
}
