#include <iostream>

#include "etameta/cli.hpp"

int main(int argc, char** argv) {
  return etameta::cli::run(argc, argv, std::cout, std::cerr);
}
