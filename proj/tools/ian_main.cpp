#include <iostream>

#include "ian/cli.hpp"

int main(int argc, char** argv) { return ian::run_cli(argc, argv, std::cout, std::cerr); }
