#include <iostream>

#include "sphconv/cli.hpp"

int main(int argc, char** argv) { return sphconv::cli::run(argc, argv, std::cout, std::cerr); }
