#include "epr/report.hpp"

#include <cstdio>

namespace epr::report {

std::string fmt(double x) {
    if (x == 0.0) x = 0.0;  // normalize -0
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
    return buf;
}

std::string header(const std::string& subcommand, std::uint64_t seed,
                   const std::string& config_bytes) {
    return "# rationalize " + subcommand + " seed=" + std::to_string(seed) +
           " config=" + fnv1a_hex(config_bytes) + "\n";
}

}  // namespace epr::report
