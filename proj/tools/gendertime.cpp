#include <iostream>

#include "gendertime/cli.hpp"

int main(int argc, char** argv) {
  return gendertime::run_cli(argc, argv, std::cout, std::cerr);
}
