#include <iostream>

#include "cubesep/cli.hpp"

int main(int argc, char** argv) {
    return cubesep::cli::run_cli(argc, argv, std::cout, std::cerr);
}
