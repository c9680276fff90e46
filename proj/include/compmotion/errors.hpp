#pragma once

#include <stdexcept>
#include <string>

namespace compmotion {

/// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Ingest / schema errors.
struct MissingColumnError : Error {
    explicit MissingColumnError(const std::string& msg) : Error(msg) {}
};
struct UnitUndeclaredError : Error {
    explicit UnitUndeclaredError(const std::string& msg) : Error(msg) {}
};
struct MalformedRowError : Error {
    MalformedRowError(const std::string& file, std::size_t line, const std::string& what_failed)
        : Error(file + ":" + std::to_string(line) + ": " + what_failed), line_number(line) {}
    std::size_t line_number;
};
struct NromIncompleteError : Error {
    explicit NromIncompleteError(const std::string& msg) : Error(msg) {}
};

// Extraction / metric preconditions.
struct EmptyIntervalError : Error {
    explicit EmptyIntervalError(const std::string& msg) : Error(msg) {}
};
struct CountMismatchError : Error {
    explicit CountMismatchError(const std::string& msg) : Error(msg) {}
};
struct SubjectCountMismatchError : Error {
    explicit SubjectCountMismatchError(const std::string& msg) : Error(msg) {}
};
struct TooFewPointsError : Error {
    explicit TooFewPointsError(const std::string& msg) : Error(msg) {}
};
struct LengthMismatchError : Error {
    explicit LengthMismatchError(const std::string& msg) : Error(msg) {}
};
struct FlaggedComponentError : Error {
    explicit FlaggedComponentError(const std::string& msg) : Error(msg) {}
};

// Synthesis.
struct UnreachableTargetError : Error {
    explicit UnreachableTargetError(const std::string& msg) : Error(msg) {}
};

// Rendering / CLI.
struct UnknownMetricError : Error {
    explicit UnknownMetricError(const std::string& msg) : Error(msg) {}
};
struct AllCellsFlaggedError : Error {
    explicit AllCellsFlaggedError(const std::string& msg) : Error(msg) {}
};
struct ConfigError : Error {
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

}  // namespace compmotion
