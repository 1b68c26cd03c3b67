#include <iostream>

#include "sptkit/cli.hpp"

int main(int argc, char** argv) {
  return sptkit::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
