#include "polaron/report.hpp"

#include <charconv>
#include <fstream>
#include <iostream>

#include "polaron/errors.hpp"
#include "polaron/version.hpp"

namespace polaron {

std::string format_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string to_csv(const std::vector<std::string>& header,
                   const std::vector<std::vector<double>>& rows) {
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out += ',';
        out += header[i];
    }
    out += '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += format_double(row[i]);
        }
        out += '\n';
    }
    return out;
}

nlohmann::ordered_json verdict_json(const VerdictReport& report,
                                    std::uint64_t seed,
                                    const std::string& config_hash) {
    nlohmann::ordered_json j;
    j["check"] = report.check;
    j["pass"] = report.pass;
    j["measured"] = report.measured;
    j["tolerance"] = report.tolerance;
    if (!report.details.is_null()) j["details"] = report.details;
    j["provenance"] = {{"seed", seed}, {"config_hash", config_hash}, {"version", kVersion}};
    return j;
}

void write_artifact(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output path '" + path + "'");
    out << content;
}

}  // namespace polaron
