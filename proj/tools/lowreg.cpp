#include <lowreg/cli.hpp>

int main(int argc, char** argv) { return lowreg::cli::dispatch(argc, argv); }
