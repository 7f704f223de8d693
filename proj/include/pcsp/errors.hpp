#pragma once

#include <stdexcept>
#include <string>

namespace pcsp {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidParameter : public Error {
public:
    using Error::Error;
};

/// A requested object would exceed a configured size cap.
class SizeLimitError : public Error {
public:
    using Error::Error;
};

/// Structures, tables or maps whose signatures/domains do not line up.
class SignatureMismatch : public Error {
public:
    using Error::Error;
};

class MalformedMultihom : public Error {
public:
    using Error::Error;
};

class InvalidInstance : public Error {
public:
    using Error::Error;
};

/// A finite check that a proven lemma guarantees has failed.
class LemmaViolation : public Error {
public:
    using Error::Error;
};

class InternalError : public Error {
public:
    using Error::Error;
};

/// Two independent routes to the same quantity disagree.
class ComputationError : public Error {
public:
    using Error::Error;
};

/// A file could not be read or written, or its contents are malformed.
class IoError : public Error {
public:
    using Error::Error;
};

class MissingKeyError : public Error {
public:
    MissingKeyError(const std::string & key, const std::string & what) : Error(what), key_(key) {}

    const std::string & key() const noexcept { return key_; }

private:
    std::string key_;
};

} // namespace pcsp
