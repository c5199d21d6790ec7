#include "ctxminer/cli.hpp"

int main(int argc, char** argv) { return ctxminer::cli::run(argc, argv); }
