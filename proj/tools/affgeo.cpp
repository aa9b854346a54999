#include <iostream>
#include <string>
#include <vector>

#include "affgeo/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return affgeo::cli::run(std::move(args), std::cout, std::cerr);
}
