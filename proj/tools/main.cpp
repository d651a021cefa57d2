#include <iostream>

#include "schottky/cli.hpp"

int main(int argc, char** argv) { return schottky::run(argc, argv, std::cout, std::cerr); }
