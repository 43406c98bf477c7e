#include <iostream>

#include "omtx/io/cli.hpp"

int main(int argc, char** argv) { return omtx::io::run_command(argc, argv, std::cout, std::cerr); }
