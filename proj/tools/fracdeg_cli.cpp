#include "fracdeg/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return fracdeg::cli::main_entry(argc, argv, std::cout, std::cerr);
}
