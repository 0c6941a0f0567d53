// Error types shared across the library.
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace algebroidkit {

/// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Two values were combined that live over different charts.
struct ChartMismatch final : Error {
    explicit ChartMismatch(const std::string& msg) : Error(msg) {}
};

/// A coordinate name was used that does not belong to the chart.
struct UnknownCoordinate final : Error {
    explicit UnknownCoordinate(const std::string& msg) : Error(msg) {}
};

/// Two sections/derivations were combined over different algebroids.
struct AlgebroidMismatch final : Error {
    explicit AlgebroidMismatch(const std::string& msg) : Error(msg) {}
};

/// Lexical/syntactic error in polynomial text. `pos` is a 0-based offset
/// into the offending string.
struct GrammarError final : Error {
    std::size_t pos;
    GrammarError(const std::string& msg, std::size_t position)
        : Error(msg + " (at offset " + std::to_string(position) + ")"), pos(position) {}
};

/// Structural/schema violation in a definition file or constructor argument.
/// `path` names the offending key ("structure/2,1", "anchor/3", ...).
struct SchemaError final : Error {
    std::string path;
    SchemaError(const std::string& key_path, const std::string& msg)
        : Error(key_path.empty() ? msg : key_path + ": " + msg), path(key_path) {}
};

/// JSON text could not be parsed at all. Carries a 1-based line number.
struct ParseError final : Error {
    std::size_t line;
    ParseError(const std::string& msg, std::size_t line_no)
        : Error("line " + std::to_string(line_no) + ": " + msg), line(line_no) {}
};

/// An operation's precondition does not hold (invalid action without
/// override, nonzero curvature in reconstruct, ...).
struct PreconditionError final : Error {
    explicit PreconditionError(const std::string& msg) : Error(msg) {}
};

} // namespace algebroidkit
