#include <iostream>

#include "coopbandits/cli.hpp"

int main(int argc, char** argv) { return coopbandits::run_cli(argc, argv, std::cout, std::cerr); }
