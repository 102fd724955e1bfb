#include <iostream>

#include "plab/cli.hpp"

int main(int argc, char** argv) { return plab::cli::run(argc, argv, std::cout, std::cerr); }
