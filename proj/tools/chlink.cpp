#include "chlink/cli.hpp"

int main(int argc, char** argv) { return chlink::cli_main(argc, argv); }
