#include <iostream>

#include "utm/cli.hpp"

int main(int argc, char** argv) { return utm::run(argc, argv, std::cout, std::cerr); }
