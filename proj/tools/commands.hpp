#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hermquat::cli
{

    enum ExitCode : int
    {
        kOk = 0,
        kVerifyFail = 1,
        kInputError = 2,
        kNoPoint = 3,
        kObstruction = 4,
        kExhausted = 5
    };

    // Parses argv and runs one subcommand. Output goes to `out` (or --out),
    // diagnostics to `err`.
    int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace hermquat::cli
