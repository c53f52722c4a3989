#pragma once

#include <stdexcept>
#include <string>

namespace qspread {

/// Base of every error raised by the library. The CLI maps these to exit status 1.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument outside the operation's domain (negative width, t < t0, n = 0, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

class UnknownParticleError : public Error {
public:
    using Error::Error;
};

/// The spatial grid cannot hold the evolved packet without truncation or aliasing.
class GridError : public Error {
public:
    using Error::Error;
};

/// The propagator kernel oscillates faster than the grid can resolve.
class ResolutionError : public Error {
public:
    using Error::Error;
};

class CapExceededError : public Error {
public:
    using Error::Error;
};

}  // namespace qspread
