#include <iostream>

#include "corefeval/cli.hpp"

int main(int argc, char** argv) {
  return corefeval::cli::run(argc, argv, std::cout, std::cerr);
}
