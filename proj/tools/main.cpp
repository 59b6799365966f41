#include <iostream>

#include "chasegraph/cli.hpp"

int main(int argc, char** argv) { return cg::run_cli(argc, argv, std::cout, std::cerr); }
