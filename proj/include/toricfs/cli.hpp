#pragma once

#include <iosfwd>
#include <string>

#include "toricfs/criteria.hpp"

namespace toricfs {

struct RunConfig {
    std::string command;    // check-split | klyachko-info | sections | cocycle | fixtures
    std::string fan_path;   // fan JSON file, or
    std::string builtin_fan;  // builtin fan name (exactly one of the two)
    std::string bundle_spec;  // tangent | cotangent | line:[..] | sum:[[..],..] | JSON file
    int64_t p = 0;            // 0 = unset; info commands default to 2, check-split requires it
    int d = 1;                // field degree
    int d_max = 4;            // extension cap for the factored witness search
    std::string criterion = "all";  // 1 | 2 | A | all
    std::string out_path;           // also write the JSON document here when nonempty
    bool chart_restrictions = false;  // sections: include per-cone monomial forms
};

// Executes one command, writing the JSON document to `out` and problems to
// `err`.  Exit codes: 0 SPLIT (or informational success), 1 NOT_SPLIT,
// 2 CRITERION_FAILED/UNKNOWN, 3 input or usage error, 4 internal error.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// argv front end over run().
int cli_main(int argc, char** argv);

}  // namespace toricfs
