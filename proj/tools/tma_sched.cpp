#include <iostream>

#include "tma/cli.hpp"

int main(int argc, char** argv) {
    return tma::run_cli(argc, argv, std::cout, std::cerr);
}
