#include <iostream>

#include "tfp/cli.hpp"

int main(int argc, char** argv) { return tfp::run(argc, argv, std::cout, std::cerr); }
