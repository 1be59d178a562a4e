#include <iostream>

#include <av1324/cli.hpp>

int main(int argc, char** argv) {
    return av1324::cli::run(argc, argv, std::cout, std::cerr);
}
