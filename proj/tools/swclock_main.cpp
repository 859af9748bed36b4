#include "swclock/cli.hpp"

int main(int argc, char** argv) { return swclock::run_cli(argc, argv); }
