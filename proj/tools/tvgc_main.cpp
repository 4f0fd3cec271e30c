#include "commands.hpp"

int main(int argc, char** argv) {
    return tvgc::cli::run(argc, argv);
}
