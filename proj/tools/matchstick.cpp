#include <iostream>

#include "matchstick/cli.hpp"

int main(int argc, char** argv) { return matchstick::run_cli(argc, argv, std::cout, std::cerr); }
