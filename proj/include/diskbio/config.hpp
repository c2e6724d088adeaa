#pragma once

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace diskbio {

/// Run configuration shared by the CLI subcommands. Config-file values are
/// defaults; command-line flags override them.
struct RunConfig {
    double a = 1.0;
    std::vector<int> levels = {2, 3, 4, 5};
    int level = 3;
    int order_regular = 4;
    int order_singular = 5;
    int n_r = 64;
    int n_theta = 64;
    int lmax = 8;
    double tol = 1e-3;
    std::string out;
    std::string suite;
    std::string op = "V";
    std::string space = "P0";
    std::string pair = "VWbar";
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    size_t e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

inline std::vector<int> parse_levels(const std::string& v, const std::string& where) {
    std::vector<int> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stoi(trim(item)));
        } catch (const std::exception&) {
            throw ConfigError(where + ": bad level list '" + v + "'");
        }
    }
    if (out.empty()) throw ConfigError(where + ": empty level list");
    return out;
}

} // namespace detail

/// Parse `key = value` lines; '#' starts a comment. Unknown keys and
/// malformed lines raise ConfigError naming the line.
inline RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config file not found: " + path);
    RunConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string where = path + ":" + std::to_string(lineno);
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(where + ": expected 'key = value'");
        std::string key = detail::trim(line.substr(0, eq));
        std::string value = detail::trim(line.substr(eq + 1));
        try {
            if (key == "a") cfg.a = std::stod(value);
            else if (key == "level") cfg.level = std::stoi(value);
            else if (key == "levels") cfg.levels = detail::parse_levels(value, where);
            else if (key == "order_regular") cfg.order_regular = std::stoi(value);
            else if (key == "order_singular") cfg.order_singular = std::stoi(value);
            else if (key == "n_r") cfg.n_r = std::stoi(value);
            else if (key == "n_theta") cfg.n_theta = std::stoi(value);
            else if (key == "lmax") cfg.lmax = std::stoi(value);
            else if (key == "tol") cfg.tol = std::stod(value);
            else if (key == "out") cfg.out = value;
            else if (key == "suite") cfg.suite = value;
            else if (key == "operator") cfg.op = value;
            else if (key == "space") cfg.space = value;
            else if (key == "pair") cfg.pair = value;
            else throw ConfigError(where + ": unknown key '" + key + "'");
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception&) {
            throw ConfigError(where + ": bad value for '" + key + "'");
        }
    }
    return cfg;
}

} // namespace diskbio
