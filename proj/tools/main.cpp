#include "phient/runner.hpp"

int main(int argc, char** argv) { return phient::run_command(argc, argv); }
