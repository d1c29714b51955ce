#include <iostream>

#include "sumdiff_cli/cli.hpp"

int main(int argc, char** argv) { return sumdiff::cli::run(argc, argv, std::cout, std::cerr); }
