#include <iostream>

#include "keygraph/cli.hpp"

int main(int argc, char** argv) { return keygraph::run_cli(argc, argv, std::cout, std::cerr); }
