#include <iostream>

#include "homres/cli.hpp"

int main(int argc, char** argv) { return homres::run_cli(argc, argv, std::cout, std::cerr); }
