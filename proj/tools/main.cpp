#include "cli/commands.hpp"

int main(int argc, char** argv) { return sliceadm::cli::run_cli(argc, argv); }
