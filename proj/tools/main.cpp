#include <string>
#include <vector>

#include "omatch/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return omatch::run_cli(args);
}
