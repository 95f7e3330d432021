#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace spamflow {

// Error category, mapped to CLI exit codes:
//   config   -> 2 (bad invocation / configuration)
//   data     -> 3 (malformed or inconsistent input data)
//   internal -> 4 (broken internal invariant)
enum class ErrorKind { config, data, internal };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string msg)
        : std::runtime_error(std::move(msg)), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

struct ConfigError : Error {
    explicit ConfigError(std::string msg) : Error(ErrorKind::config, std::move(msg)) {}
};

struct DataError : Error {
    explicit DataError(std::string msg) : Error(ErrorKind::data, std::move(msg)) {}
};

struct InternalError : Error {
    explicit InternalError(std::string msg) : Error(ErrorKind::internal, std::move(msg)) {}
};

// Input file violates its schema; carries the offending line.
struct SchemaError : DataError {
    SchemaError(const std::string& file, std::size_t line, const std::string& what)
        : DataError(file + ":" + std::to_string(line) + ": " + what), line_number(line) {}

    std::size_t line_number;
};

struct DoubleSpendError : DataError {
    explicit DoubleSpendError(std::string msg) : DataError(std::move(msg)) {}
};

struct MissingPriceError : DataError {
    explicit MissingPriceError(std::string msg) : DataError(std::move(msg)) {}
};

struct MissingRateError : DataError {
    explicit MissingRateError(std::string msg) : DataError(std::move(msg)) {}
};

struct GroupTooSmallError : DataError {
    explicit GroupTooSmallError(std::string msg) : DataError(std::move(msg)) {}
};

struct DegenerateVarianceError : DataError {
    explicit DegenerateVarianceError(std::string msg) : DataError(std::move(msg)) {}
};

}  // namespace spamflow
