#pragma once

#include <stdexcept>
#include <string>

namespace csrpoly {

/// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Row pointer shape or monotonicity problems, length mismatches.
class StructureError : public Error {
 public:
  using Error::Error;
};

/// A row or column index outside the declared shape.
class IndexError : public Error {
 public:
  using Error::Error;
};

/// Column indices within a row are unsorted or repeated.
class NonCanonicalError : public Error {
 public:
  using Error::Error;
};

class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Malformed Matrix Market or CSV text.
class ParseError : public Error {
 public:
  using Error::Error;
};

class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// A feature tuple or expanded column outside the domain of a mapping.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A size or index computation does not fit in index_t.
class OverflowError : public Error {
 public:
  using Error::Error;
};

}  // namespace csrpoly
