#include "dirac_ladder/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return dirac_ladder::cli::main_entry(argc, argv, std::cout, std::cerr); }
