#include <iostream>

#include "fpp/cli/app.hpp"

int main(int argc, char** argv) { return fpp::cli::run_cli(argc, argv, std::cout, std::cerr); }
