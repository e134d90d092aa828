#include "tlfleet/cli/commands.hpp"

#include <iostream>

int main(int argc, char **argv) { return tlfleet::cli::run_cli(argc, argv, std::cout, std::cerr); }
