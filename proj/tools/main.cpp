#include "cli.hpp"

int main(int argc, char** argv) { return specband::cli::run(argc, argv); }
