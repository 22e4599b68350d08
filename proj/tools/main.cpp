#include <iostream>

#include "geokit/cli.hpp"

int main(int argc, char ** argv) { return geokit::cli::run(argc, argv, std::cout, std::cerr); }
