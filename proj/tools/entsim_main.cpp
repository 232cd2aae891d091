#include "entsim/cli.hpp"

int main(int argc, char** argv) { return entsim::cli::run(argc, argv); }
