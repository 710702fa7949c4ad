#include <iostream>

#include "cli.hpp"

int main(int argc, char **argv) { return diff4::cli::run(argc, argv, std::cout, std::cerr); }
