#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  auto r = ctop::cli::run(args);
  if (r.exit != 0) {
    std::cerr << r.error;
    return r.exit;
  }
  bool toFile = false;
  for (const auto& a : args)
    if (a == "-o" || a == "--output" || a.rfind("--output=", 0) == 0) toFile = true;
  if (!toFile) std::cout << r.output;
  return 0;
}
