#include <iostream>

#include "regover/cli.hpp"

int main(int argc, char** argv) { return regover::run_cli(argc, argv, std::cout, std::cerr); }
