#include <iostream>
#include <string>
#include <vector>

#include "smcp/cli.h"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return smcp::run_cli(args, std::cout, std::cerr);
}
