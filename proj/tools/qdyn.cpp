#include "qdyn/cli.hpp"

int main(int argc, char** argv) { return qdyn::cli::run(argc, argv); }
