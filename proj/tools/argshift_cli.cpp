#include "argshift/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return argshift::run_cli(argc, argv, std::cout, std::cerr);
}
