#include "multistable/cli.hpp"

int main(int argc, char** argv) { return multistable::run_cli(argc, argv); }
