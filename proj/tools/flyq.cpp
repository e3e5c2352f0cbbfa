#include "flyq/cli.hpp"

int main(int argc, char** argv) { return flyq::cli_main(argc, argv); }
