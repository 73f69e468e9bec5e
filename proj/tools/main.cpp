#include <iostream>
#include <string>
#include <vector>

#include "mbanach/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return mbanach::run(args, std::cout, std::cerr);
}
