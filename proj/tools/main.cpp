#include "flutterid/cli.hpp"

int main(int argc, char** argv) { return flutterid::cli::run(argc, argv); }
