#include <iostream>

#include "qdisc/cli/commands.hpp"

int main(int argc, char** argv) { return qdisc::cli::run_cli(argc, argv, std::cout, std::cerr); }
