#pragma once

#include <stdexcept>
#include <string>

namespace depthlab {

// Error categories map one-to-one onto CLI exit codes (input 1, resource 3);
// integrity and precondition failures indicate bugs or misuse and surface as 2.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InputError : public Error {
public:
    using Error::Error;
};

class ResourceError : public Error {
public:
    using Error::Error;
};

class IntegrityError : public Error {
public:
    using Error::Error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

}  // namespace depthlab
