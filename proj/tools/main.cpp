#include <iostream>

#include "l0lab/cli.hpp"

int main(int argc, char** argv) {
    return l0lab::run_cli(argc, argv, std::cout, std::cerr);
}
