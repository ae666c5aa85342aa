#include "gaugelab/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return gaugelab::cli_main(argc, argv, std::cout, std::cerr); }
