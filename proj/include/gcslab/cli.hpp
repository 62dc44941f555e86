#pragma once

#include <stdexcept>
#include <string>

namespace gcslab::cli {

/// Structural problems with the run configuration (unparseable JSON, unknown
/// mode or field, malformed sweep). Distinct from domain errors so the two
/// map to different exit codes.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Exit codes: 0 success, 2 configuration error, 3 verification failure,
/// 4 numeric or domain error.
int run(int argc, const char* const* argv);

}  // namespace gcslab::cli
