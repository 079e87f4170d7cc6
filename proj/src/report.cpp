#include "lame/report.hpp"

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace lame {

std::string content_hash(const nlohmann::json& payload) {
    const std::string bytes = payload.dump();
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "fnv1a64:%016llx", static_cast<unsigned long long>(h));
    return buf;
}

nlohmann::json make_report(const std::string& command, const nlohmann::json& payload) {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char stamp[32];
    std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return nlohmann::json{{"content_hash", content_hash(payload)},
                          {"meta", {{"command", command},
                                    {"timestamp", stamp},
                                    {"tool", "lame-spectra"},
                                    {"version", "0.1.0"}}},
                          {"payload", payload}};
}

void write_json(const std::string& path, const nlohmann::json& j) {
    std::ofstream out(path, std::ios::trunc);
    if (!out)
        throw std::runtime_error("write_json: cannot open '" + path + "'");
    out << j.dump(2) << "\n";
}

void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::vector<double>>& rows) {
    std::ofstream out(path, std::ios::trunc);
    if (!out)
        throw std::runtime_error("write_csv: cannot open '" + path + "'");
    out << header << "\n";
    char buf[64];
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            std::snprintf(buf, sizeof(buf), "%.17g", row[i]);
            out << buf;
            if (i + 1 < row.size()) out << ",";
        }
        out << "\n";
    }
}

} // namespace lame
