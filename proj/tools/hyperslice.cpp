// hyperslice - command line front end
#include <hyperslice/cli.hpp>

int main(int argc, char** argv) { return hyperslice::run_cli(argc, argv); }
