#include "commands.hpp"

int main(int argc, char** argv) { return kscolour::cli::run(argc, argv); }
