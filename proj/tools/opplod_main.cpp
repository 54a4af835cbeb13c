#include <iostream>
#include <string>
#include <vector>

#include "opplod/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return opplod::cli::cli_main(std::move(args), std::cout, std::cerr);
}
