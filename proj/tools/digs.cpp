#include <iostream>

#include "digs/cli.hpp"

int main(int argc, char** argv) { return digs::cli::run(argc, argv, std::cout, std::cerr); }
