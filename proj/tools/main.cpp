#include "se1p/cli.hpp"

int main(int argc, char** argv) { return se1p::run(argc, argv); }
