#include <iostream>

#include "iset/cli.hpp"

int main(int argc, char** argv) { return iset::run_cli(argc, argv, std::cout, std::cerr); }
