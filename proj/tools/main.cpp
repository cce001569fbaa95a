#include <iostream>

#include "idealscan/cli.hpp"

int main(int argc, char** argv) {
  return idealscan::run_cli(argc, argv, std::cout, std::cerr);
}
