#include <iostream>

#include "synwb/cli.hpp"

int main(int argc, char** argv) { return synwb::run_cli(argc, argv, std::cout, std::cerr); }
