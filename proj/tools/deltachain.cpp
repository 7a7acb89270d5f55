#include <iostream>

#include "deltachain/cli.hpp"

int main(int argc, char** argv) {
  return deltachain::cli::main_entry(argc, argv, std::cout, std::cerr);
}
