#include <unistd.h>

#include <iostream>

#include "copland/cli.hpp"

int main(int argc, char** argv) {
  return copland::cli::run_cli(argc, argv, std::cout, std::cerr, isatty(STDOUT_FILENO) != 0);
}
