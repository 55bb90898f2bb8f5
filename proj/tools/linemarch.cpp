#include "linemarch/cli.hpp"

int main(int argc, char** argv) { return linemarch::cli::main_entry(argc, argv); }
