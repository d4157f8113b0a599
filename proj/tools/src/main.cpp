#include "run.hpp"

int main(int argc, char** argv) { return symred::cli::main_entry(argc, argv); }
