#include <iostream>

#include "drsplit/cli.hpp"

int main(int argc, char** argv) { return drsplit::cli::run_cli(argc, argv, std::cout, std::cerr); }
