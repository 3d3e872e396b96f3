#include "isochrone/cli.hpp"

int main(int argc, char** argv) { return isochrone::cli::run(argc, argv); }
