#pragma once

namespace tvgc::cli {

/// Entry point for the `tvgc` command-line tool. Exit codes: 0 success,
/// 2 input/validation failure, 3 numerical failure, 1 unexpected error.
int run(int argc, char** argv);

} // namespace tvgc::cli
