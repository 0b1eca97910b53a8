#include "stackyfan/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return stackyfan::cli::main(argc, argv, std::cout, std::cerr); }
