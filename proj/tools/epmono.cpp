#include <epmono/cli.hpp>

int main(int argc, char** argv) { return epmono::cli::run(argc, argv); }
