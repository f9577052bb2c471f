#ifndef POLARSIFT_ERRORS_HPP
#define POLARSIFT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace polarsift {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Tensor/layer dimension mismatches; message names the offending axis.
struct ShapeError : Error {
    using Error::Error;
};

// Malformed or unreadable input files (catalogs, FITS, PGM, manifests,
// checkpoints, configs). CLI exit code 3.
struct DataError : Error {
    using Error::Error;
};

// Bad command-line invocation. CLI exit code 2.
struct UsageError : Error {
    using Error::Error;
};

// Non-finite values during training. CLI exit code 4.
struct NumericError : Error {
    using Error::Error;
};

}  // namespace polarsift

#endif
