#include "cli.hpp"

int main(int argc, char** argv) { return besovmm::cli::main_entry(argc, argv); }
