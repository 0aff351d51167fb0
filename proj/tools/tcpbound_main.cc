#include <iostream>
#include <string>
#include <vector>

#include "tcpbound/cli.h"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return tcpbound::RunCommand(args, std::cout, std::cerr);
}
