#include <iostream>

#include "ffzeta/cli.hpp"

int main(int argc, char** argv) {
  return ffzeta::cli_main(argc, argv, std::cout, std::cerr);
}
