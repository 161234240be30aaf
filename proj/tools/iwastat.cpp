#include <iostream>

#include "iwastat/cli.hpp"

int main(int argc, char** argv) { return iwastat::run_cli(argc, argv, std::cout, std::cerr); }
