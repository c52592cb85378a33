#include <iostream>
#include <string>
#include <vector>

#include "kcut/io.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return kcut::run_cli(args, std::cin, std::cout, std::cerr);
}
