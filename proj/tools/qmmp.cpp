#include <iostream>

#include "qmmp/cli.hpp"

int main(int argc, char** argv) { return qmmp::cli::run(argc, argv, std::cout, std::cerr); }
