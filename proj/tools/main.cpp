#include "actch/cli.hpp"

int main(int argc, char** argv) { return actch::run_cli(argc, argv); }
