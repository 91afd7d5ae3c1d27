#pragma once

// Deterministic serialization: JSON with 17-significant-digit floats and
// RFC 4180 CSV.

#include <json.hpp>

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace twofluid::cli {

using Json = nlohmann::ordered_json;

/// Shortest-independent fixed format: %.17g semantics, never locale dependent.
std::string format_double(double v);

/// Finite values as numbers, non-finite values as null.
void write_json(std::ostream& os, const Json& value, int indent = 2);

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed = 0xcbf29ce484222325ULL);
std::string hex64(std::uint64_t v);

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

std::string csv_escape(const std::string& field);
void write_csv(std::ostream& os, const Table& table);

inline std::string cell(double v) { return format_double(v); }
inline std::string cell(int v) { return std::to_string(v); }
inline std::string cell(bool v) { return v ? "true" : "false"; }
inline std::string cell(const std::string& v) { return v; }
inline std::string cell(const char* v) { return v; }

} // namespace twofluid::cli
