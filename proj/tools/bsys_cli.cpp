#include <iostream>

#include "bsys/cli.hpp"

int main(int argc, char** argv) { return bsys::cli::run(argc, argv, std::cout, std::cerr); }
