#pragma once

#include <json.hpp>

#include <string>
#include <vector>

namespace polaron {

// Shortest decimal representation that round-trips to the same double.
std::string format_double(double v);

// CSV with '.' decimals, '\n' line endings, round-trip precision.
std::string to_csv(const std::vector<std::string>& header,
                   const std::vector<std::vector<double>>& rows);

// Self-describing pass/fail record; every failure carries the violating datum
// in `details`.
struct VerdictReport {
    std::string check;
    bool pass = false;
    double measured = 0.0;
    double tolerance = 0.0;
    nlohmann::ordered_json details;
};

nlohmann::ordered_json verdict_json(const VerdictReport& report,
                                    std::uint64_t seed,
                                    const std::string& config_hash);

// Write to the path, or stdout when the path is empty.
void write_artifact(const std::string& path, const std::string& content);

}  // namespace polaron
