#include "commands.hpp"

int main(int argc, char** argv) {
    return hexe::cli::run(argc, argv);
}
