#include <iostream>

#include "psph/cli.hpp"

int main(int argc, char** argv) { return psph::cli::run(argc, argv, std::cout, std::cerr); }
