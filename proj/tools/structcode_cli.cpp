#include <iostream>

#include "structcode/cli.hpp"

int main(int argc, char** argv) { return structcode::run_cli(argc, argv, std::cout, std::cerr); }
