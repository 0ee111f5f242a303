#pragma once

namespace valuesched {

// Entry point behind the `valuesched` binary; exposed for in-process
// testing. Exit codes: 0 success, 1 I/O failure, 2 validation or usage
// failure.
int run_cli(int argc, const char* const* argv);

}  // namespace valuesched
