#include <iostream>
#include <string>
#include <vector>

#include "unidet/cli.hh"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return unidet::run_cli(args, std::cout, std::cerr);
}
