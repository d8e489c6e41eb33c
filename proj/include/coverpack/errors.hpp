#pragma once

#include <stdexcept>
#include <string>

namespace coverpack {

// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Structurally invalid instance data (negative indices, size mismatches,
// empty universe where one is required, bad generator parameters).
class InvalidInstance : public Error {
public:
  using Error::Error;
};

// Invalid fixed-point operator (negative entries, non-positive diagonal,
// missing row access for an in-place sweep).
class InvalidOperator : public Error {
public:
  using Error::Error;
};

// A cover instance with an element no set contains. Carries the index of
// the offending element in the instance's own numbering.
class Infeasible : public Error {
public:
  Infeasible(int element, const std::string& what) : Error(what), element(element) {}
  int element;
};

// A fixed-point start vector with a non-positive component.
class NonPositiveStart : public Error {
public:
  using Error::Error;
};

// Minimization was handed a set collection that does not cover the universe.
class NotACover : public Error {
public:
  using Error::Error;
};

// Malformed token or structure in an input file. Carries the 1-based line.
class ParseError : public Error {
public:
  ParseError(int line, const std::string& what) : Error(what), line(line) {}
  int line;
};

// Input file ended before the announced data was complete.
class TruncatedFile : public Error {
public:
  using Error::Error;
};

// An index token outside the instance's declared range. Carries the 1-based
// position of the offending token in the file's token stream.
class IndexOutOfRange : public Error {
public:
  IndexOutOfRange(long long token, const std::string& what) : Error(what), token(token) {}
  long long token;
};

}  // namespace coverpack
