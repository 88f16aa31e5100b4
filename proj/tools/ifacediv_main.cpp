#include "ifacediv/cli.hpp"

int main(int argc, char** argv) { return ifacediv::cli::run(argc, argv); }
