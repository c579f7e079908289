#include <iostream>

#include "kary/cli.hpp"

int main(int argc, char** argv) { return kary::cli::run(argc, argv, std::cout, std::cerr); }
