#pragma once

#include <stdexcept>
#include <string>

namespace bjle {

// Malformed or corrupt on-disk data: bad magic, truncation, hash mismatch,
// unparseable CSV, ragged rows.
class format_error : public std::runtime_error {
public:
    explicit format_error(const std::string& what) : std::runtime_error(what) {}
};

// Parameter regime outside the supported theory (e.g. circulant advisor with
// R^2 < delta * lambda^2). Distinct from invalid_argument so callers can
// map it to a dedicated exit code.
class regime_error : public std::runtime_error {
public:
    explicit regime_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bjle
