#include "cli.hpp"

int main(int argc, char** argv) { return confball::cli::run(argc, argv); }
