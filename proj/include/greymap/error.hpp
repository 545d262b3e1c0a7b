#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace greymap {

// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Argument outside the documented domain (negative greyness, empty list, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

// Division or inversion by a grey number whose kernel is zero.
class ZeroKernel : public Error {
public:
    ZeroKernel() : Error("zero kernel") {}
};

// An interval weight strictly contains zero, so the sign-definite
// comparison matrix cannot be formed.
class SpansZero : public Error {
public:
    SpansZero(std::size_t row, std::size_t col);

    std::size_t row() const noexcept { return row_; }
    std::size_t col() const noexcept { return col_; }

private:
    std::size_t row_;
    std::size_t col_;
};

// A row whose weighted kernel sum is zero; ratio matrices are undefined there.
class DegenerateRow : public Error {
public:
    explicit DegenerateRow(std::size_t row);

    std::size_t row() const noexcept { return row_; }

private:
    std::size_t row_;
};

// The requested engine cannot run on the given model.
class UnsupportedEngine : public Error {
public:
    using Error::Error;
};

// Model file could not be parsed. line is 1-based, 0 when unknown.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t line, std::string field);

    std::size_t line() const noexcept { return line_; }
    const std::string& field() const noexcept { return field_; }

private:
    std::size_t line_;
    std::string field_;
};

} // namespace greymap
