#include <iostream>

#include "liehom/cli.hpp"

int main(int argc, char** argv) {
  return liehom::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
