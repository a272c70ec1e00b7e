#pragma once

#include <stdexcept>
#include <string>

namespace gsynth {

/// Data-dependent failure: unreadable input, exhausted source pool,
/// mismatched dataset files. Maps to CLI exit code 2.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A mask with no foreground or no background pixels; the four-region
/// decomposition is undefined. The dataset builder catches this and
/// skips the offending source image.
class DegenerateMaskError : public DataError {
public:
    using DataError::DataError;
};

}  // namespace gsynth
