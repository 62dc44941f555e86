#pragma once

#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace gcslab::out {

/// Shortest-form "%.<digits>g" rendering; the same double always produces the
/// same bytes, which keeps every output file byte-stable across runs.
std::string format_double(double value, int significant_digits);

/// RFC-4180 field quoting: fields containing commas, quotes or newlines are
/// wrapped in quotes with embedded quotes doubled.
std::string csv_quote(const std::string& field);

void write_csv_row(std::ostream& os, std::span<const std::string> fields);

/// Minimal deterministic JSON emitter. Insertion order is preserved and
/// numbers go through format_double, so serialization does not depend on any
/// third-party library's float printing.
class JsonWriter {
public:
    explicit JsonWriter(int significant_digits = 17) : digits_(significant_digits) {}

    std::string string(const std::string& s) const;
    std::string number(double v) const { return format_double(v, digits_); }
    std::string boolean(bool b) const { return b ? "true" : "false"; }

    /// { "k1": v1, ... } from pre-rendered value snippets.
    std::string object(std::span<const std::pair<std::string, std::string>> members) const;
    std::string array(std::span<const std::string> elements) const;

private:
    int digits_;
};

}  // namespace gcslab::out
