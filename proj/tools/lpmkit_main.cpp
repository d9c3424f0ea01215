#include "lpmkit/cli.hpp"

int main(int argc, char** argv) { return lpmkit::cli::run(argc, argv); }
