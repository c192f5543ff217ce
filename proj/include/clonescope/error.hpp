#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include "clonescope/frontend/span.hpp"

namespace clonescope {

/// Base of every error raised by the library. The CLI maps these to exit code 2.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class LexError : public Error {
public:
    LexError(const SourceSpan& span, const std::string& what)
        : Error(span.to_string() + ": " + what), span_(span) {}
    const SourceSpan& span() const noexcept { return span_; }

private:
    SourceSpan span_;
};

class ParseError : public Error {
public:
    ParseError(const SourceSpan& span, std::string expected, const std::string& found)
        : Error(span.to_string() + ": expected " + expected + ", found '" + found + "'"),
          span_(span), expected_(std::move(expected)) {}
    const SourceSpan& span() const noexcept { return span_; }
    const std::string& expected() const noexcept { return expected_; }

private:
    SourceSpan span_;
    std::string expected_;
};

class UnsupportedConstruct : public Error {
public:
    UnsupportedConstruct(const SourceSpan& span, const std::string& construct)
        : Error(span.to_string() + ": unsupported construct '" + construct + "'"), span_(span) {}
    const SourceSpan& span() const noexcept { return span_; }

private:
    SourceSpan span_;
};

class DegenerateData : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    DimensionMismatch(std::size_t expected, std::size_t got)
        : Error("dimension mismatch: expected " + std::to_string(expected) + ", got " +
                std::to_string(got)) {}
};

class ZeroSplits : public Error {
public:
    ZeroSplits() : Error("model has no internal nodes") {}
};

class BudgetTooSmall : public Error {
public:
    using Error::Error;
};

class EmptyFunction : public Error {
public:
    using Error::Error;
};

class SchemaError : public Error {
public:
    SchemaError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace clonescope
