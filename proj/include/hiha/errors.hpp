#pragma once

#include <stdexcept>
#include <string>

namespace hiha {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid grid extents, axis mismatches, non-finite data.
class ShapeError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

/// Archive parse failures carry a typed kind so callers can distinguish
/// corruption from version skew without string matching.
class ArchiveError : public Error {
public:
    enum class Kind {
        BadMagic,
        BadVersion,
        Checksum,
        Truncated,
        Malformed,
    };

    ArchiveError(Kind kind, const std::string& message)
        : Error(message), kind_(kind) {}

    Kind kind() const { return kind_; }

    static const char* kind_name(Kind k) {
        switch (k) {
            case Kind::BadMagic: return "bad-magic";
            case Kind::BadVersion: return "bad-version";
            case Kind::Checksum: return "checksum";
            case Kind::Truncated: return "truncated";
            case Kind::Malformed: return "malformed";
        }
        return "unknown";
    }

private:
    Kind kind_;
};

}  // namespace hiha
