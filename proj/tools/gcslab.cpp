#include "gcslab/cli.hpp"

int main(int argc, char** argv) { return gcslab::cli::run(argc, argv); }
