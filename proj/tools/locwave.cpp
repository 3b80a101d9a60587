#include <iostream>

#include "locwave/io.hpp"

int main(int argc, char** argv) {
    return locwave::io::run_cli(argc, argv, std::cout, std::cerr);
}
