#include <iostream>

#include "horotree/cli.hpp"

int main(int argc, char** argv) {
  return horotree::run_cli({argv + 1, argv + argc}, std::cout, std::cerr);
}
