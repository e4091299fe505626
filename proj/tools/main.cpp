#include <unistd.h>

#include <iostream>
#include <string>
#include <vector>

#include "cli.hpp"

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  std::vector<std::string> args(argv + 1, argv + argc);
  nbx::cli::Io io{std::cin, std::cout, std::cerr, isatty(STDOUT_FILENO) != 0};
  return nbx::cli::run(std::move(args), io);
}
