#include <iostream>

#include "signbridge/cli/cli.hpp"

int main(int argc, char** argv) { return signbridge::cli::run(argc, argv, std::cout, std::cerr); }
