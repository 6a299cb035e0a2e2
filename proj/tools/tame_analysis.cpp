#include <iostream>

#include "tame/cli.hpp"

int main(int argc, char** argv) { return tame::cli::main_entry(argc, argv, std::cout, std::cerr); }
