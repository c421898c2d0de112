#include "cvqkd/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return cvqkd::run_cli(argc, argv, std::cout, std::cerr); }
