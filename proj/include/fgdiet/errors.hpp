#pragma once

#include <stdexcept>
#include <string>

namespace fgdiet {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid domain inputs or configuration values.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Malformed or inconsistent data files.
class DataError : public Error {
public:
    using Error::Error;
};

/// A resource guard tripped (instance too large to enumerate).
class GuardError : public Error {
public:
    using Error::Error;
};

}  // namespace fgdiet
