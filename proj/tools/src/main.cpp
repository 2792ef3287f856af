#include <iostream>

#include "pang/cli.hpp"

int main(int argc, char** argv) { return pang::cli::run(argc, argv, std::cout, std::cerr); }
