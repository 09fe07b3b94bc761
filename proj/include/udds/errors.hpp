#ifndef UDDS_ERRORS_HPP
#define UDDS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace udds {

class SketchError : public std::runtime_error {
public:
    explicit SketchError(const std::string& what) : std::runtime_error(what) {}
};

// Decrement of a bucket that is not present in the store.
class MissingBucketError : public SketchError {
public:
    explicit MissingBucketError(const std::string& what) : SketchError(what) {}
};

// A collapse would push gamma (or a count) beyond finite representation.
class SaturationError : public SketchError {
public:
    explicit SaturationError(const std::string& what) : SketchError(what) {}
};

class CountOverflowError : public SketchError {
public:
    explicit CountOverflowError(const std::string& what) : SketchError(what) {}
};

class EmptySketchError : public SketchError {
public:
    explicit EmptySketchError(const std::string& what) : SketchError(what) {}
};

// Merge of sketches whose gamma values are not on the same collapse lineage.
class IncompatibleSketchError : public SketchError {
public:
    explicit IncompatibleSketchError(const std::string& what) : SketchError(what) {}
};

class SerializationError : public SketchError {
public:
    explicit SerializationError(const std::string& what) : SketchError(what) {}
};

}  // namespace udds

#endif
