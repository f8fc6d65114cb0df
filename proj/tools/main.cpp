#include <iostream>

#include "fairdiv/cli.hpp"

int main(int argc, char** argv) {
  return fairdiv::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
