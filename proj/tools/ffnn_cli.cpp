#include <iostream>
#include <string>
#include <vector>

#include "ffnn/cli.hpp"

int main(int argc, char** argv) {
    return ffnn::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
