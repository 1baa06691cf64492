#include "goursat/cli.hpp"

int main(int argc, char** argv) { return goursat::run_cli(argc, argv); }
