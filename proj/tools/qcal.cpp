#include "qcal/cli.hpp"

int main(int argc, char** argv) { return qcal::cli_main(argc, argv); }
