#include "tvseg/cli.hpp"

int main(int argc, char** argv) { return tvseg::run_cli(argc, argv); }
