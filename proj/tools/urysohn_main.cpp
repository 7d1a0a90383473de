#include <iostream>

#include "urysohn/cli.hpp"

int main(int argc, char** argv) { return urysohn::cli::run(argc, argv, std::cout, std::cerr); }
