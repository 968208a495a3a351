#include "nlqed/cli/commands.hpp"

int main(int argc, char** argv) { return nlqed::cli::run(argc, argv); }
