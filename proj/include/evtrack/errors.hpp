#ifndef EVTRACK_ERRORS_HPP
#define EVTRACK_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace evtrack {

/// Reasons a piece of input data can be rejected.
enum class Errc {
    MalformedLine,
    BadHeader,
    OutOfRange,
    NonMonotonicTime,
    BadMagic,
    TruncatedRecord,
    BadPolarityByte,
    TimestampOverflow,
    InvalidPolicy,
    TooFewRecords,
    NonPositiveInput,
    DegenerateRoi,
    EmptyTrajectory,
    InvalidPath,
};

const char* errc_name(Errc code);

/// Invalid or inconsistent input data. `line()` is 1-based for text inputs
/// and 0 when there is no meaningful location.
class DataError : public std::runtime_error {
public:
    DataError(Errc code, const std::string& message, std::size_t line = 0);

    Errc code() const noexcept { return code_; }
    std::size_t line() const noexcept { return line_; }

private:
    Errc code_;
    std::size_t line_;
};

/// Filesystem-level failure (open, read, write, rename).
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace evtrack

#endif // EVTRACK_ERRORS_HPP
