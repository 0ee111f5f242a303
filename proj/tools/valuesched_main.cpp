#include "valuesched/cli.hpp"

int main(int argc, char** argv) { return valuesched::run_cli(argc, argv); }
