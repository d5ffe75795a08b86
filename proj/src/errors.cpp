#include "evtrack/errors.hpp"

namespace evtrack {

const char* errc_name(Errc code) {
    switch (code) {
    case Errc::MalformedLine: return "MalformedLine";
    case Errc::BadHeader: return "BadHeader";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::NonMonotonicTime: return "NonMonotonicTime";
    case Errc::BadMagic: return "BadMagic";
    case Errc::TruncatedRecord: return "TruncatedRecord";
    case Errc::BadPolarityByte: return "BadPolarityByte";
    case Errc::TimestampOverflow: return "TimestampOverflow";
    case Errc::InvalidPolicy: return "InvalidPolicy";
    case Errc::TooFewRecords: return "TooFewRecords";
    case Errc::NonPositiveInput: return "NonPositiveInput";
    case Errc::DegenerateRoi: return "DegenerateRoi";
    case Errc::EmptyTrajectory: return "EmptyTrajectory";
    case Errc::InvalidPath: return "InvalidPath";
    }
    return "Unknown";
}

DataError::DataError(Errc code, const std::string& message, std::size_t line)
    : std::runtime_error(line == 0 ? std::string(errc_name(code)) + ": " + message
                                   : std::string(errc_name(code)) + " at line " +
                                         std::to_string(line) + ": " + message),
      code_(code),
      line_(line) {}

} // namespace evtrack
