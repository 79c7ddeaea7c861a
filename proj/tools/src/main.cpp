#include <iostream>

#include "charvar_cli/commands.hpp"

int main(int argc, char** argv) { return charvar::cli::main_entry(argc, argv, std::cout, std::cerr); }
