#include "sggn/cli.hpp"

int main(int argc, char** argv) { return sggn::run_command(argc, argv); }
