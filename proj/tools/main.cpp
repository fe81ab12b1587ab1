#include <iostream>

#include "cogsim/cli.hpp"

int main(int argc, char** argv) { return cogsim::run_cli(argc, argv, std::cout, std::cerr); }
