#include "tcr/cli.hpp"

int main(int argc, char** argv) { return tcr::cli::run(argc, argv); }
