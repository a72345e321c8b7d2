#include "sewkit/cli.hpp"

int main(int argc, char** argv) { return sewkit::run(argc, argv); }
