#include "csg/cli.hpp"

int main(int argc, char** argv) { return csg::cli_main(argc, argv); }
