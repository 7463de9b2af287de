#include "cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return levy_chaos::cli::main(argc, argv, std::cout, std::cerr); }
