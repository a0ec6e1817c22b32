#include <iostream>

#include "njump/cli.hpp"

int main(int argc, char** argv) {
  return njump::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
