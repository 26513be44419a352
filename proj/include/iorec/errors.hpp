#pragma once

#include <stdexcept>

namespace iorec {

/// Base class for all errors thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid argument value (negative lambda, out-of-range k, bad config...).
struct ArgumentError : Error {
    using Error::Error;
};

/// Non-finite data where finite values are required.
struct SanitizeError : Error {
    using Error::Error;
};

/// Dimension or arrangement mismatch between matrices and their metadata.
struct LayoutError : Error {
    using Error::Error;
};

/// Panel arrangement that leaves a whole matrix row or column unobserved,
/// for which completion degenerates to an all-zero reconstruction.
struct IllPosedLayoutError : LayoutError {
    using LayoutError::LayoutError;
};

/// Unknown country or label.
struct LookupError : Error {
    using Error::Error;
};

/// Metric evaluated over an empty position set.
struct MetricError : Error {
    using Error::Error;
};

/// Model selection impossible (e.g. empty validation set).
struct SelectionError : Error {
    using Error::Error;
};

/// Malformed input file; message carries file name and line number.
struct ParseError : Error {
    using Error::Error;
};

/// Filesystem failure while reading or writing artifacts.
struct IoError : Error {
    using Error::Error;
};

} // namespace iorec
