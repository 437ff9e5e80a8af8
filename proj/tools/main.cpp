#include <iostream>
#include <string>
#include <vector>

#include "ringnet/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return ringnet::cli::run(std::move(args), std::cout, std::cerr);
}
