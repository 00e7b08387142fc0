#include "motifq/cli.hpp"

int main(int argc, char** argv) { return motifq::cli_main(argc, argv); }
