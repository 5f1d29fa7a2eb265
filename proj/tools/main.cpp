#include <iostream>

#include "defect/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  defect::cli::Result r = defect::cli::run(args);
  std::cout << r.out;
  std::cerr << r.err;
  return r.exit_code;
}
