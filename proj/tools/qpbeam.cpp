#include <iostream>

#include "qpbeam/cli.hpp"

int main(int argc, char** argv) { return qpbeam::cli::run(argc, argv, std::cout, std::cerr); }
