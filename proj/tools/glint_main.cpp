#include "glint/cli.hpp"

int main(int argc, char** argv) { return glint::cli_main(argc, argv); }
