#include "grainstore/error.hpp"

namespace grainstore {

std::string_view errc_name(Errc code) {
    switch (code) {
    case Errc::InvalidSchema: return "InvalidSchema";
    case Errc::SchemaMismatch: return "SchemaMismatch";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::IoError: return "IoError";
    case Errc::FormatError: return "FormatError";
    case Errc::UnsortedTable: return "UnsortedTable";
    case Errc::UnsortedSource: return "UnsortedSource";
    case Errc::NoDateColumn: return "NoDateColumn";
    case Errc::NoKeyColumn: return "NoKeyColumn";
    case Errc::NoTimestampColumn: return "NoTimestampColumn";
    case Errc::NoCurrencyColumn: return "NoCurrencyColumn";
    case Errc::NoActionColumn: return "NoActionColumn";
    case Errc::StaleIndex: return "StaleIndex";
    case Errc::NonAscendingIndices: return "NonAscendingIndices";
    case Errc::MixedKeys: return "MixedKeys";
    case Errc::UnknownField: return "UnknownField";
    case Errc::NoSuchEntity: return "NoSuchEntity";
    case Errc::NonMonotoneTimestamp: return "NonMonotoneTimestamp";
    case Errc::SchemaIncompatible: return "SchemaIncompatible";
    case Errc::InvalidCronExpression: return "InvalidCronExpression";
    case Errc::NoFireWithinHorizon: return "NoFireWithinHorizon";
    case Errc::CyclicTopology: return "CyclicTopology";
    case Errc::Usage: return "Usage";
    }
    return "Error";
}

} // namespace grainstore
