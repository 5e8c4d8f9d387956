#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace bagcq {

/// Exact natural-number result of applying a query to a structure.
using Count = boost::multiprecision::cpp_int;

/// Exact rational, always kept in lowest terms with a positive denominator.
using Rational = boost::multiprecision::cpp_rational;

using VertexId = std::uint32_t;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed query, structure, polynomial or valuation text.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what + " (line " + std::to_string(line) + ", column " +
              std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Arity mismatch, unknown symbol, or incompatible signatures.
class SignatureError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its documented domain.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An enumeration or search would exceed its configured bound.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);

/// Falling factorial n (n-1) ... (n-k+1); zero when k > n.
Count falling_factorial(const Count& n, std::uint64_t k);

}  // namespace bagcq
