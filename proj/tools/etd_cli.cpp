#include <iostream>
#include <string>
#include <vector>

#include "etd/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return etd::cli::run(args, std::cout, std::cerr);
}
