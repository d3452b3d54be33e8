#include "ptaa/cli.hpp"

int main(int argc, char** argv) {
    return ptaa::cli_main(argc, argv);
}
