#include "ftl/cli.hpp"

int main(int argc, char** argv) { return ftl::run_cli(argc, argv); }
