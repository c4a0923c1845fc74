#pragma once

#include <string>
#include <vector>

namespace sloc::cli {

// start:stop:count, inclusive of both ends; count = 1 gives start only.
struct Range {
    double start = 0.0;
    double stop = 0.0;
    int count = 1;

    std::vector<double> values() const;
    std::string str() const;
};

// Throws std::invalid_argument on malformed text or an empty range.
Range parse_range(const std::string& text);

// Comma separated numbers.
std::vector<double> parse_list(const std::string& text);

// key = value lines; '#' starts a comment. Throws std::runtime_error if the
// file cannot be read or a line has no '='.
std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path);

// Removes --config FILE from args and splices its entries in as --key=value
// tokens right after the subcommand name, so that flags given on the command
// line come later and win.
std::vector<std::string> expand_config(const std::vector<std::string>& args);

// SLOC_THREADS or 1.
int env_threads();

}  // namespace sloc::cli
