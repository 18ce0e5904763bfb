// SPDX-License-Identifier: MIT
#include <iostream>
#include <string>
#include <vector>

#include "entdist/cli/commands.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return entdist::cli::run(args, std::cout, std::cerr);
}
