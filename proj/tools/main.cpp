#include "emn/cli.hpp"

int main(int argc, char** argv) { return emn::run(argc, argv); }
