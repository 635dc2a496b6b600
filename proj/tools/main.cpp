#include <iostream>

#include "symtt/cli.hpp"

int main(int argc, char** argv) {
  return symtt::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
