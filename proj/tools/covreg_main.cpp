#include "covreg/cli.hpp"

int main(int argc, char **argv) { return covreg::cli_main(argc, argv); }
