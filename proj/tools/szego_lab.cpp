#include <iostream>

#include "cli_app.hpp"

int main(int argc, char** argv) { return szego::cli::main_with(argc, argv, std::cout, std::cerr); }
