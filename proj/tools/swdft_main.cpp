#include <iostream>

#include "swdft/cli.hpp"

int main(int argc, char** argv) { return swdft::cli::run(argc, argv, std::cout, std::cerr); }
