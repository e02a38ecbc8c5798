#include <iostream>

#include "cli_run.hpp"

int main(int argc, char** argv) { return ttcli::main_entry(argc, argv, std::cout, std::cerr); }
