#include "gcslab/output.hpp"

#include <cstdio>

namespace gcslab::out {

std::string format_double(double value, int significant_digits) {
    if (significant_digits < 1) significant_digits = 1;
    if (significant_digits > 17) significant_digits = 17;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", significant_digits, value);
    return buf;
}

std::string csv_quote(const std::string& field) {
    const bool needs_quotes =
        field.find_first_of(",\"\r\n") != std::string::npos;
    if (!needs_quotes) return field;
    std::string quoted = "\"";
    for (char c : field) {
        if (c == '"') quoted += "\"\"";
        else quoted += c;
    }
    quoted += '"';
    return quoted;
}

void write_csv_row(std::ostream& os, std::span<const std::string> fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) os << ',';
        os << csv_quote(fields[i]);
    }
    os << '\n';
}

std::string JsonWriter::string(const std::string& s) const {
    std::string escaped = "\"";
    for (char c : s) {
        switch (c) {
            case '"': escaped += "\\\""; break;
            case '\\': escaped += "\\\\"; break;
            case '\n': escaped += "\\n"; break;
            case '\r': escaped += "\\r"; break;
            case '\t': escaped += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    escaped += buf;
                } else {
                    escaped += c;
                }
        }
    }
    escaped += '"';
    return escaped;
}

std::string JsonWriter::object(
    std::span<const std::pair<std::string, std::string>> members) const {
    std::string body = "{";
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (i) body += ",";
        body += string(members[i].first);
        body += ":";
        body += members[i].second;
    }
    body += "}";
    return body;
}

std::string JsonWriter::array(std::span<const std::string> elements) const {
    std::string body = "[";
    for (std::size_t i = 0; i < elements.size(); ++i) {
        if (i) body += ",";
        body += elements[i];
    }
    body += "]";
    return body;
}

}  // namespace gcslab::out
