#pragma once

#include <stdexcept>
#include <string>

namespace mitensor {

/// Base class for every error this library raises.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FileNotReadable : Error {
    using Error::Error;
};

struct UnsupportedFormat : Error {
    using Error::Error;
};

struct CorruptImage : Error {
    using Error::Error;
};

struct EmptyDataset : Error {
    using Error::Error;
};

struct InsufficientData : Error {
    using Error::Error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

struct SingleClassData : Error {
    using Error::Error;
};

struct ClassTooSmall : Error {
    using Error::Error;
};

struct EmptyTestSet : Error {
    using Error::Error;
};

struct MissingClass : Error {
    using Error::Error;
};

struct VersionMismatch : Error {
    using Error::Error;
};

struct FeatureSelectionMismatch : Error {
    using Error::Error;
};

} // namespace mitensor
