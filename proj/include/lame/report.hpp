#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace lame {

/// FNV-1a 64-bit fingerprint of the canonical payload serialization.  The
/// hash covers the payload only, so two runs with identical config and seed
/// match even though the sibling meta block carries a fresh timestamp.
std::string content_hash(const nlohmann::json& payload);

/// Assembles {content_hash, meta{command, timestamp, tool, version}, payload}.
nlohmann::json make_report(const std::string& command, const nlohmann::json& payload);

void write_json(const std::string& path, const nlohmann::json& j);

/// CSV with a header line; numbers are written with round-trip precision.
void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::vector<double>>& rows);

} // namespace lame
