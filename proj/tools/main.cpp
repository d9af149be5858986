#include <cstdlib>
#include <iostream>

#include "affine_lab/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::optional<std::string> env_tol;
  if (const char* v = std::getenv("AFFINE_LAB_TOL")) env_tol = v;
  return affine_lab::cli::run(args, std::cout, std::cerr, env_tol);
}
