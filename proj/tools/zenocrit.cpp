#include <iostream>

#include "zeno/cli/app.hpp"

int main(int argc, char** argv) {
    return zeno::cli::run(argc, argv, std::cout, std::cerr);
}
