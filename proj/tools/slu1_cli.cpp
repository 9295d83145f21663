#include "slu1/cli.hpp"

int main(int argc, char** argv) { return slu1::run_cli(argc, argv); }
