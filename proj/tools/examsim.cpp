#include <iostream>

#include "examsim/cli/cli.hpp"

int main(int argc, char** argv) {
  return examsim::cli::run_cli(argc, argv, std::cin, std::cout, std::cerr);
}
