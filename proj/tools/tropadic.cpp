#include <iostream>
#include <string>
#include <vector>

#include "tropadic/cli_run.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return tropadic::cli::run(args, std::cout);
}
