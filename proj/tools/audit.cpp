#include "instaudit/cli.hpp"

int main(int argc, char** argv) { return instaudit::cli::run(argc, argv); }
