#include "qhjqes/cli/commands.hpp"

int main(int argc, char** argv) { return qhjqes::cli::run_cli(argc, argv); }
