#include <iostream>

#include "dqo/cli.hpp"

int main(int argc, char** argv) { return dqo::cli::run(argc, argv, std::cout, std::cerr); }
