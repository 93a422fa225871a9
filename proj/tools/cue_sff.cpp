#include <iostream>

#include "cue/cli.hpp"

int main(int argc, char** argv) { return cue::run_cli(argc, argv, std::cout, std::cerr); }
