#include <iostream>

#include "varlab/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return varlab::cli::run_cli(args, std::cout, std::cerr);
}
