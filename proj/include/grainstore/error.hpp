#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace grainstore {

/// Every failure the library can raise. The CLI maps each code onto one
/// process exit status (see tools/).
enum class Errc {
    InvalidSchema,
    SchemaMismatch,
    OutOfRange,
    IoError,
    FormatError,
    UnsortedTable,
    UnsortedSource,
    NoDateColumn,
    NoKeyColumn,
    NoTimestampColumn,
    NoCurrencyColumn,
    NoActionColumn,
    StaleIndex,
    NonAscendingIndices,
    MixedKeys,
    UnknownField,
    NoSuchEntity,
    NonMonotoneTimestamp,
    SchemaIncompatible,
    InvalidCronExpression,
    NoFireWithinHorizon,
    CyclicTopology,
    Usage,
};

std::string_view errc_name(Errc code);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

} // namespace grainstore
