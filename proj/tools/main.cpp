#include "cli.hpp"

int main(int argc, char** argv) { return cx::cli::run(argc, argv); }
