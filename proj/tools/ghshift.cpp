#include <iostream>

#include "ghshift/cli.hpp"

int main(int argc, char** argv) {
  return ghshift::cli::run_cli(argc, argv, std::cout, std::cerr);
}
