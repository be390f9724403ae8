#include <iostream>

#include "isingq/cli.hpp"

int main(int argc, char** argv) { return isingq::cli::dispatch(argc, argv, std::cout, std::cerr); }
