#pragma once

#include <stdexcept>
#include <string>

namespace fdeligne {

// All failures raised by the engine derive from Error; the subclass names
// the failure kind so callers (and the CLI exit-status mapping) can branch
// on it.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define FDELIGNE_ERROR(Name)                \
  class Name : public Error {               \
   public:                                  \
    explicit Name(const std::string& what)  \
        : Error(#Name ": " + what) {}       \
  };

FDELIGNE_ERROR(NotASubspace)
FDELIGNE_ERROR(DimensionMismatch)
FDELIGNE_ERROR(InvalidComplex)
FDELIGNE_ERROR(HomotopyIdentityFailure)
FDELIGNE_ERROR(UnsupportedRegime)
FDELIGNE_ERROR(NoWedgeDefined)
FDELIGNE_ERROR(NoFundamentalCurrent)
FDELIGNE_ERROR(DegreeMismatch)
FDELIGNE_ERROR(UnknownModel)
FDELIGNE_ERROR(BadOrder)
FDELIGNE_ERROR(ImaginaryPairing)
FDELIGNE_ERROR(BadArgument)

#undef FDELIGNE_ERROR

// Complex files: position is 1-based; col 0 means the whole line.
class ParseError : public Error {
 public:
  ParseError(int line, int col, const std::string& what)
      : Error("ParseError: line " + std::to_string(line) + ", col " +
              std::to_string(col) + ": " + what),
        line_(line),
        col_(col) {}
  int line() const { return line_; }
  int col() const { return col_; }

 private:
  int line_;
  int col_;
};

}  // namespace fdeligne
