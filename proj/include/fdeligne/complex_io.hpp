#pragma once

// Text format for finite Dolbeault complexes.
//
//   # comment
//   [meta]
//   name = P1
//   variance = cohomological      (or homological, the default)
//   dimension = 1                 (optional)
//   [dims]
//   0 0 1                         (p q dim, declared grading)
//   [del]                         (also [delbar], [sigma])
//   block 0 0                     (source bidegree)
//   1/2 -i 3+1/4i                 (one row of the target per line)
//
// Entries are exact: a/b, c/d*i, a/b+c/di, with "·" allowed before i.

#include <string>

#include "fdeligne/dolbeault.hpp"

namespace fdeligne {

struct ComplexFile {
  BigradedComplex complex;
  int dimension = -1;
};

/// ParseError with line/column on malformed text; no validation.
ComplexFile parse_complex_text(const std::string& text);
/// parse_complex_text followed by require_valid (InvalidComplex).
ComplexFile parse_complex_file(const std::string& text);
ComplexFile read_complex_file(const std::string& path);

/// Canonical form: fixed section order, sorted bidegrees, zero blocks
/// dropped, canonical literals.
std::string serialize_complex(const ComplexFile& f);
std::string serialize_complex(const BigradedComplex& c, int dimension = -1);

}  // namespace fdeligne
