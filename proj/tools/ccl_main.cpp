#include "ccl/cli.hpp"

int main(int argc, char** argv) { return ccl::run_cli(argc, argv); }
