#pragma once

#include <stdexcept>
#include <string>

namespace rtrace {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IndexOutOfRange : public Error {
public:
    using Error::Error;
};

class DescriptorMismatch : public Error {
public:
    using Error::Error;
};

class NonSquare : public Error {
public:
    using Error::Error;
};

/// The difference of the two linear parts is singular, so the coincidence
/// set is not a finite set of isolated points.
class SingularDifference : public Error {
public:
    using Error::Error;
};

class NotACoincidencePoint : public Error {
public:
    using Error::Error;
};

/// Raised when g~(x~) - f~(x~) fails to be integral at a claimed
/// coincidence point. Indicates an internal inconsistency.
class NonIntegerTranslation : public Error {
public:
    using Error::Error;
};

/// Input text did not match the documented grammar. `where` names the
/// offending line or field.
class ParseError : public Error {
public:
    ParseError(const std::string& where, const std::string& what)
        : Error(where + ": " + what), where_(where) {}

    const std::string& where() const noexcept { return where_; }

private:
    std::string where_;
};

} // namespace rtrace
