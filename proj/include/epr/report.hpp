#pragma once
// Deterministic report formatting shared by the CLI subcommands.

#include <cstdint>
#include <string>

namespace epr::report {

std::string fmt(double x);              // fixed %.12g rendering
std::string fnv1a_hex(const std::string& bytes);
std::string header(const std::string& subcommand, std::uint64_t seed,
                   const std::string& config_bytes);

}  // namespace epr::report
