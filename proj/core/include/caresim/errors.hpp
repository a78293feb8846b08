#pragma once

#include <stdexcept>
#include <string>

namespace caresim {

/// Raised when a scenario, fixture, or series document cannot be parsed.
/// The message carries the location when the underlying parser provides one.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what_arg) : std::runtime_error(what_arg) {}
};

/// Raised when a numerical procedure cannot produce a meaningful result
/// (failed factorization, undefined ratio, singular dynamics).
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what_arg) : std::runtime_error(what_arg) {}
};

}  // namespace caresim
