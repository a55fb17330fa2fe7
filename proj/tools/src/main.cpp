#include "abch_cli/run.hpp"

int main(int argc, char** argv) { return abch::cli::main_entry(argc, argv); }
