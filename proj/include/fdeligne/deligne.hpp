#pragma once

// Deligne complex D(A,p) of a Dolbeault complex, the cone of
// u(a,f) = -a + f, the homotopy equivalence between them and the chain-level
// product. All degrees and weights here are internal (homological); the
// cohomological complex D^n(A,p) of forms is D_{-n}(A,-p).

#include <map>
#include <optional>
#include <string>

#include "fdeligne/algebra.hpp"
#include "fdeligne/chain.hpp"
#include "fdeligne/dolbeault.hpp"

namespace fdeligne {

struct DeligneComplex {
  int p = 0;
  BigradedComplex source;
  std::map<int, QMatrix> basis;  // realified host coordinates, one column per basis vector
  ChainComplex chain;

  /// Degree of A hosting D_n: n for n <= 2p, n + 1 above.
  int host_degree(int n) const { return n <= 2 * p ? n : n + 1; }
  bool low(int n) const { return n <= 2 * p; }
  QMatrix basis_at(int n) const;
  /// Coordinates of host vectors in the basis of D_n; NotASubspace if outside.
  QMatrix coordinates(int n, const QMatrix& host) const;
  bool contains(int n, const QMatrix& host) const;
};

DeligneComplex build_deligne(const BigradedComplex& a, int p);
/// p and the degrees in the complex's declared grading.
DeligneComplex build_deligne_declared(const BigradedComplex& a, int p);

/// A^R(p) with the restricted differential.
ChainComplex real_twisted_complex(const BigradedComplex& a, int p);

enum class ConeConvention {
  standard,  // d(a, f, w) = (da, df, -a + f - dw)
  negated    // d(a, f, w) = (da, df, a - f + dw)
};
std::string to_string(ConeConvention c);

struct ConeComplex {
  int p = 0;
  ConeConvention convention = ConeConvention::standard;
  std::map<int, QMatrix> real_basis;  // A^R(p)_n inside realified A_n
  std::map<int, QMatrix> filt_basis;  // F_p A_n, restricted to Q
  ChainComplex chain;

  std::size_t real_dim(int n) const;
  std::size_t filt_dim(int n) const;
};

ConeComplex build_cone(const BigradedComplex& a, int p,
                       ConeConvention conv = ConeConvention::standard);

struct HomotopyData {
  ConeConvention convention = ConeConvention::standard;
  DeligneComplex deligne;
  ConeComplex cone;
  ChainMap psi;                // cone -> D
  ChainMap phi;                // D -> cone
  std::map<int, QMatrix> h;    // cone_n -> cone_{n+1}, keyed by n
  std::vector<std::string> failures;  // empty iff both identities hold
};

/// Builds psi, phi, h for one convention and checks psi phi = 1,
/// phi psi - 1 = dh + hd in every degree.
HomotopyData homotopy_maps_for(const BigradedComplex& a, int p, ConeConvention conv);
/// Tries the standard convention, then the negated one; throws
/// HomotopyIdentityFailure if neither certifies.
HomotopyData homotopy_maps(const BigradedComplex& a, int p);

/// Chain-level product D_{n1}(X,p1) x D_{n2}(Y,p2) -> D_{n1+n2}(Z,p1+p2)
/// for a product X x Y -> Z with zero offset, in internal grading. Inputs and
/// output are realified host vectors.
struct ProductSpaces {
  const BigradedComplex& x;
  const BigradedComplex& y;
  const BigradedComplex& z;
  const Wedge& w;
};
QMatrix deligne_product(const ProductSpaces& s, int n1, int p1, const QMatrix& x,
                        int n2, int p2, const QMatrix& y);

/// D(src,p) -> D(dst,p) induced by a bidegree-preserving map.
ChainMap deligne_chain_map(const BigradedComplex& src, const BigradedComplex& dst,
                           const BigradedMap& f, const DeligneComplex& ds,
                           const DeligneComplex& dd);

/// r_p(x) on a host vector of D_n(A,p) (internal), landing in A_n.
QMatrix r_map(const BigradedComplex& a, int n, int p, const QMatrix& x);

}  // namespace fdeligne
