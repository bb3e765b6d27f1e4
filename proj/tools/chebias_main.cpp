#include <iostream>

#include "chebias/cli.hpp"

int main(int argc, char** argv) { return chebias::cli::run(argc, argv, std::cout, std::cerr); }
