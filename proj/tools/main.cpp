#include <iostream>

#include "normmesh/cli.hpp"

int main(int argc, char** argv) { return normmesh::cli::main(argc, argv, std::cout, std::cerr); }
