#include <iostream>

#include "poolann/cli.hpp"

int main(int argc, char** argv) {
    return poolann::run_cli(argc, argv, std::cout, std::cerr);
}
