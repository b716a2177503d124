#include <iostream>

#include "roflab/cli.hpp"

int main(int argc, char** argv) { return roflab::run_cli(argc, argv, std::cout, std::cerr); }
