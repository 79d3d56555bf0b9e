#include <iostream>

#include "sketchfeas/cli.hpp"

int main(int argc, char** argv) { return sketchfeas::run_cli(argc, argv, std::cout, std::cerr); }
