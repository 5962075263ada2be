#include <iostream>
#include <string>
#include <vector>

#include "etakit/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return etakit::cli::main_entry(args, std::cout, std::cerr);
}
