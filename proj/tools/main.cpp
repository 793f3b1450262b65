#include <iostream>

#include "uat/cli.hpp"

int main(int argc, char** argv) { return uat::run_cli(argc, argv, std::cout, std::cerr); }
