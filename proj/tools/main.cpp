#include <iostream>
#include <string>
#include <vector>

#include "coxcert/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return coxcert::run_cli(args, std::cout, std::cerr);
}
