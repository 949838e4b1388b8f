#include <iostream>

#include "vofde/cli.hpp"

int main(int argc, char** argv) { return vofde::cli::run_cli(argc, argv, std::cout, std::cerr); }
