#include "cli/commands.hpp"

int main(int argc, char** argv) { return lowbmm::cli::run(argc, argv); }
