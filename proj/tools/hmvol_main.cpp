#include <iostream>

#include "hmvol/cli.hpp"

int main(int argc, char** argv) { return hmvol::run_cli(argc, argv, std::cout, std::cerr); }
