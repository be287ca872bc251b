#include "dynpeak/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return dynpeak::cli::run(argc, argv, std::cout, std::cerr); }
