#include "cli.hpp"

int main(int argc, char** argv) { return commsim::run_cli(argc, argv); }
