#pragma once

#include <stdexcept>
#include <string>

namespace rotsync {

/// Base class for failures of the numerical procedures (as opposed to
/// malformed input, which raises std::invalid_argument).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Dyadic arcs selected at consecutive levels do not nest: the word is too
/// short or the dynamics does not synchronize.
class NestingViolation : public Error {
public:
    using Error::Error;
};

class NotEquivariant : public Error {
public:
    using Error::Error;
};

class AtomDetected : public Error {
public:
    using Error::Error;
};

class NoConvergentSubsequence : public Error {
public:
    using Error::Error;
};

class NoSeparatingWord : public Error {
public:
    using Error::Error;
};

class TranslationMismatch : public Error {
public:
    using Error::Error;
};

class InsufficientGoodWords : public Error {
public:
    using Error::Error;
};

class DegenerateSampling : public Error {
public:
    using Error::Error;
};

class PreconditionViolation : public Error {
public:
    using Error::Error;
};

} // namespace rotsync
