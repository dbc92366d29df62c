#pragma once

// Bilinear products between bigraded complexes: forms times forms, forms
// acting on currents, and transported products on currents.

#include <map>
#include <optional>
#include <utility>

#include "fdeligne/dolbeault.hpp"

namespace fdeligne {

/// Structure constants of a bilinear map X x Y -> Z. The product of bidegrees
/// b1, b2 lands in b1 + b2 + offset (internal bidegrees). The block for
/// (b1, b2) has dim(target) rows and dim(b1) * dim(b2) columns, column index
/// i * dim(b2) + j for basis vectors e_i, e_j.
struct Wedge {
  Bidegree offset{0, 0};
  std::map<std::pair<Bidegree, Bidegree>, CMatrix> table;

  int degree_offset() const { return offset.total(); }
};

/// x in degree n1 of `x`, y in degree n2 of `y`; returns the product in
/// degree n1 + n2 + offset of `z`. Complex coordinates.
CMatrix wedge(const BigradedComplex& xs, const BigradedComplex& ys,
              const BigradedComplex& zs, const Wedge& w, int n1, const CMatrix& x,
              int n2, const CMatrix& y);
/// Same on realified column vectors.
QMatrix wedge_real(const BigradedComplex& xs, const BigradedComplex& ys,
                   const BigradedComplex& zs, const Wedge& w, int n1,
                   const QMatrix& x, int n2, const QMatrix& y);

/// Matrix of y |-> x * y (complex-linear in y) from degree n2 of ys.
CMatrix left_multiplication(const BigradedComplex& xs, const BigradedComplex& ys,
                            const BigradedComplex& zs, const Wedge& w, int n1,
                            const CMatrix& x, int n2);

/// Product restricted to a quotient: both factors and the target are
/// replaced by quotient complexes through projection/lift matrices.
/// Returns the structure constants on the quotient (same offset).
Wedge descend(const Wedge& w, const BigradedComplex& big,
              const std::map<Bidegree, CMatrix>& lift,
              const std::map<Bidegree, CMatrix>& project,
              const BigradedComplex& small);

/// A Dolbeault complex of forms with its product and, for compact
/// equidimensional models, the integral on the top bidegree.
struct DolbeaultAlgebra {
  BigradedComplex complex;
  std::optional<Wedge> wedge;
  int dimension = -1;             // declared complex dimension d, -1 if none
  std::optional<CMatrix> integral;  // 1 x dim A^{d,d} row
};

}  // namespace fdeligne
