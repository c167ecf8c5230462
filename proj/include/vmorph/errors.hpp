#pragma once

#include <stdexcept>
#include <string>

#include "vmorph/span.hpp"

namespace vmorph {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Error tied to a location in some source file.
class LocatedError : public Error {
public:
    LocatedError(const std::string& kind, Span span, const std::string& message)
        : Error(to_string(span) + ": " + kind + ": " + message), span_(std::move(span)), message_(message) {}

    const Span& span() const { return span_; }
    const std::string& detail() const { return message_; }

private:
    Span span_;
    std::string message_;
};

class SyntaxError : public LocatedError {
public:
    SyntaxError(Span span, const std::string& message) : LocatedError("syntax error", std::move(span), message) {}
};

// Valid Java that falls outside the supported subset.
class UnsupportedConstruct : public LocatedError {
public:
    UnsupportedConstruct(Span span, const std::string& construct)
        : LocatedError("unsupported construct", std::move(span), construct), construct_(construct) {}

    const std::string& construct() const { return construct_; }

private:
    std::string construct_;
};

}  // namespace vmorph
