#include <iostream>

#include "apxbsp/cli.hpp"

int main(int argc, char** argv) { return apxbsp::run_cli(argc, argv, std::cout, std::cerr); }
