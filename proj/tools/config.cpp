#include "config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "sloc/numerics.hpp"

namespace sloc::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& s) {
    const std::string t = trim(s);
    double v = 0.0;
    const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || p != t.data() + t.size() || t.empty())
        throw std::invalid_argument("not a number: '" + s + "'");
    return v;
}

}  // namespace

std::vector<double> Range::values() const {
    std::vector<double> v(count);
    for (int i = 0; i < count; ++i) v[i] = count == 1 ? start : start + (stop - start) * i / (count - 1);
    return v;
}

std::string Range::str() const {
    return num::fmt17(start) + ":" + num::fmt17(stop) + ":" + std::to_string(count);
}

Range parse_range(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
    if (parts.size() != 3) throw std::invalid_argument("range must be start:stop:count, got '" + text + "'");
    Range r;
    r.start = to_double(parts[0]);
    r.stop = to_double(parts[1]);
    const double c = to_double(parts[2]);
    if (c < 1 || c != static_cast<int>(c)) throw std::invalid_argument("range count must be a positive integer");
    r.count = static_cast<int>(c);
    if (r.count > 1 && !(r.stop > r.start)) throw std::invalid_argument("range is empty: '" + text + "'");
    return r;
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) out.push_back(to_double(item));
    if (out.empty()) throw std::invalid_argument("empty list");
    return out;
}

std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read config file " + path);
    std::vector<std::pair<std::string, std::string>> out;
    int lineno = 0;
    for (std::string line; std::getline(in, line);) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected key=value");
        out.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return out;
}

std::vector<std::string> expand_config(const std::vector<std::string>& args) {
    std::vector<std::string> rest;
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size()) throw std::invalid_argument("--config needs a file name");
            path = args[++i];
        } else if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
        } else {
            rest.push_back(args[i]);
        }
    }
    if (path.empty()) return rest;
    // first token not starting with '-' after the program name is the subcommand
    std::size_t at = rest.size();
    for (std::size_t i = 1; i < rest.size(); ++i)
        if (!rest[i].empty() && rest[i][0] != '-') {
            at = i + 1;
            break;
        }
    std::vector<std::string> injected;
    for (const auto& [k, v] : read_config_file(path)) injected.push_back("--" + k + "=" + v);
    rest.insert(rest.begin() + static_cast<std::ptrdiff_t>(std::min(at, rest.size())), injected.begin(), injected.end());
    return rest;
}

int env_threads() { return num::default_threads(); }

}  // namespace sloc::cli
