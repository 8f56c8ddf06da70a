#include "toricfs/cli.hpp"

int main(int argc, char** argv) { return toricfs::cli_main(argc, argv); }
