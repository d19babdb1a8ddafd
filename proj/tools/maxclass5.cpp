#include "maxclass5/cli.hpp"

int main(int argc, char** argv) { return maxclass5::run_command(argc, argv); }
