#include "cflow/cli.hpp"

int main(int argc, char** argv) { return cflow::cli::run(argc, argv); }
