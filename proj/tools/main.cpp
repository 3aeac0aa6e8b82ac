#include "eqp/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return eqp::cli::run(argc, argv, std::cout, std::cerr); }
