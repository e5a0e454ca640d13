#include <iostream>

#include "convchar/cli.hpp"

int main(int argc, char** argv) { return convchar::cli::run(argc, argv, std::cout, std::cerr); }
