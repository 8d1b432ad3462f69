#include "warpgeo/cli.hpp"

int main(int argc, char** argv) { return warpgeo::cli::run_main(argc, argv); }
