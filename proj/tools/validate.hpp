#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sloc::cli {

struct ValidateOptions {
    bool inject_hn_zero = false;  // replace the number-expectation series by 0
    bool coarse_grid = false;     // run the wave-residual study on a coarse radial grid
    int threads = 1;
};

struct Check {
    std::string module;
    std::string name;
    double value = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string note;
};

std::vector<Check> run_validation(const ValidateOptions& o);

// Prints one line per check and a summary; returns the exit code.
int report_validation(const std::vector<Check>& checks, std::ostream& os);

}  // namespace sloc::cli
