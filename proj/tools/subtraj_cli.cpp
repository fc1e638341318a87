#include <string>
#include <vector>

#include "subtraj/io.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return subtraj::run_cli(args);
}
