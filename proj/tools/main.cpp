#include <iostream>

#include "jmap/cli.hpp"

int main(int argc, char** argv) { return jmap::cli::run(argc, argv, std::cout, std::cerr); }
