#include "quermass/cli.hpp"

int main(int argc, char** argv) { return quermass::run_cli(argc, argv); }
