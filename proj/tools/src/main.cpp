#include <iostream>

#include "spinham_tools/commands.hpp"

int main(int argc, char **argv) { return spinham::cli::run(argc, argv, std::cout, std::cerr); }
