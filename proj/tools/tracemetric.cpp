#include <iostream>

#include "tracemetric/cli.hpp"

int main(int argc, char** argv) { return tracemetric::cli::run(argc, argv, std::cout, std::cerr); }
