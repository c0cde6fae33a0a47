#include <iostream>

#include "relspec/cli.hpp"

int main(int argc, char** argv) { return relspec::cli::run(argc, argv, std::cout, std::cerr); }
