#pragma once

#include <stdexcept>
#include <string>

namespace statementnet {

// Error taxonomy mirrored by the CLI exit codes:
//   1 ValidationError  (bad config, missing files, bad flags)
//   2 DataError        (malformed records, broken sidecars, empty inputs)
//   3 InternalError    (violated invariants; always a bug)
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

class InternalError : public std::runtime_error {
public:
    explicit InternalError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace statementnet
