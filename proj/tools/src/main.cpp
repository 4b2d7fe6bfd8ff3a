#include <iostream>

#include "bfhire/cli.hpp"

int main(int argc, char** argv) {
  return bfhire::execute_command({argv + 1, argv + argc}, std::cout, std::cerr);
}
