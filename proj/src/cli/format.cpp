#include "twofluid/cli/format.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

namespace twofluid::cli {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

namespace {

void write_value(std::ostream& os, const Json& v, int indent, int depth) {
    const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
    const std::string close(static_cast<std::size_t>(indent * depth), ' ');
    switch (v.type()) {
    case Json::value_t::object: {
        if (v.empty()) {
            os << "{}";
            return;
        }
        os << "{\n";
        bool first = true;
        for (const auto& [key, item] : v.items()) {
            if (!first) os << ",\n";
            first = false;
            os << pad << Json(key).dump() << ": ";
            write_value(os, item, indent, depth + 1);
        }
        os << "\n" << close << "}";
        return;
    }
    case Json::value_t::array: {
        if (v.empty()) {
            os << "[]";
            return;
        }
        // Flat numeric arrays stay on one line.
        bool flat = true;
        for (const auto& item : v)
            if (item.is_structured()) flat = false;
        if (flat) {
            os << "[";
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (i) os << ", ";
                write_value(os, v[i], indent, depth + 1);
            }
            os << "]";
            return;
        }
        os << "[\n";
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) os << ",\n";
            os << pad;
            write_value(os, v[i], indent, depth + 1);
        }
        os << "\n" << close << "]";
        return;
    }
    case Json::value_t::number_float: {
        const double d = v.get<double>();
        os << (std::isfinite(d) ? format_double(d) : "null");
        return;
    }
    default: os << v.dump(); return;
    }
}

} // namespace

void write_json(std::ostream& os, const Json& value, int indent) {
    write_value(os, value, indent, 0);
    os << "\n";
}

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t h) {
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i, v >>= 4) s[static_cast<std::size_t>(i)] = digits[v & 0xf];
    return s;
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void write_csv(std::ostream& os, const Table& table) {
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) os << ',';
            os << csv_escape(cells[i]);
        }
        os << "\r\n";
    };
    line(table.header);
    for (const auto& r : table.rows) line(r);
}

} // namespace twofluid::cli
