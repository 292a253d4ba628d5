#include <iostream>

#include "bernegger/cli.hpp"

int main(int argc, char** argv) { return bernegger::run_cli(argc, argv, std::cout, std::cerr); }
