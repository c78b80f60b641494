// Entry point for the chirped-trap sideband sweep tool.

#include "chirptrap/run_config.hpp"

int main(int argc, char** argv) {
    return chirptrap::cli::main_entry(argc, argv);
}
