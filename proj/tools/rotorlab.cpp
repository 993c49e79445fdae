#include "rotor/cli/commands.hpp"

int main(int argc, char** argv) { return rotor::cli::run(argc, argv); }
