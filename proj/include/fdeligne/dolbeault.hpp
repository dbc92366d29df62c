#pragma once

// Finite Dolbeault complexes.
//
// A BigradedComplex is always stored in homological grading: del has type
// (-1,0), delbar has type (0,-1). A cohomological complex (forms) is stored
// with both indices negated and only carries a Variance flag so reports and
// files can present it in its own grading. Every construction downstream is
// therefore written once, for the homological case.

#include <climits>
#include <compare>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fdeligne/exact.hpp"

namespace fdeligne {

struct Bidegree {
  int p = 0;
  int q = 0;

  int total() const { return p + q; }
  Bidegree swapped() const { return {q, p}; }
  Bidegree negated() const { return {-p, -q}; }
  friend Bidegree operator+(Bidegree a, Bidegree b) { return {a.p + b.p, a.q + b.q}; }
  friend auto operator<=>(const Bidegree&, const Bidegree&) = default;
};

std::string to_string(Bidegree b);

enum class Variance { homological, cohomological };

std::string to_string(Variance v);

/// Sentinel for an absent bound in F_{k,k'} (F_k = F_{k,inf}).
inline constexpr int kNoBound = INT_MAX / 4;

class BigradedComplex {
 public:
  std::string name;
  Variance variance = Variance::homological;

  // All keys are internal (homological) bidegrees. del/delbar/sigma are
  // keyed by source; a missing block means the zero map.
  std::map<Bidegree, int> dims;
  std::map<Bidegree, CMatrix> del;     // (p,q) -> (p-1,q)
  std::map<Bidegree, CMatrix> delbar;  // (p,q) -> (p,q-1)
  std::map<Bidegree, CMatrix> sigma;   // (p,q) -> (q,p), applied after conj

  int dim(Bidegree b) const;
  CMatrix del_block(Bidegree src) const;
  CMatrix delbar_block(Bidegree src) const;
  CMatrix sigma_block(Bidegree src) const;

  bool empty() const;
  /// Smallest and largest internal total degree carrying a nonzero space;
  /// {0, -1} for the empty complex.
  std::pair<int, int> degree_range() const;
  /// Bidegrees of internal degree n with nonzero dimension, by first index.
  std::vector<Bidegree> bidegrees_in_degree(int n) const;
  std::size_t degree_dim(int n) const;
  /// Offset of the block b inside the coordinate vector of degree b.total().
  std::size_t offset(Bidegree b) const;

  // Degree-level complex matrices (internal degrees).
  CMatrix del_matrix(int n) const;     // A_n -> A_{n-1}
  CMatrix delbar_matrix(int n) const;  // A_n -> A_{n-1}
  CMatrix d_matrix(int n) const;
  CMatrix sigma_matrix(int n) const;   // antilinear coefficients on A_n

  // Realified operators on A_n (restriction of scalars, see exact.hpp).
  QMatrix real_d(int n) const;
  QMatrix real_del(int n) const;
  QMatrix real_delbar(int n) const;
  QMatrix real_sigma(int n) const;
  /// Projection F_{k,k2} onto components (l,l') with l <= k and l' <= k2.
  QMatrix real_filtration(int n, int k, int k2 = kNoBound) const;
  /// Projection onto the component of bidegree (a, n - a).
  QMatrix real_component(int n, int a) const;
  /// pi_p(x) = (x + (-1)^p conj(x)) / 2.
  QMatrix real_pi(int n, int p) const;

  /// Converts a degree or weight between the declared grading and the
  /// internal homological one (negation for cohomological complexes).
  int to_internal(int external) const {
    return variance == Variance::cohomological ? -external : external;
  }
  int to_external(int internal) const { return to_internal(internal); }
  Bidegree to_internal(Bidegree b) const {
    return variance == Variance::cohomological ? b.negated() : b;
  }
  Bidegree to_external(Bidegree b) const { return to_internal(b); }

  /// Removes zero-dimensional entries and blocks touching them.
  void normalize();
};

/// An element of A_n with its per-bidegree components (internal degree n).
struct TwistedVector {
  int degree = 0;
  CMatrix coords;  // column vector in A_degree coordinates

  CMatrix component(const BigradedComplex& a, Bidegree b) const;
};

struct Violation {
  std::string kind;
  std::string where;
};

/// Every violated Dolbeault identity; empty iff the complex is valid.
std::vector<Violation> validate_dolbeault(const BigradedComplex& a);
bool is_valid(const BigradedComplex& a);
/// Throws InvalidComplex listing the violations.
void require_valid(const BigradedComplex& a);

/// Hodge filtration in the complex's declared grading: for homological
/// complexes F_p A_n = sum over p' <= p; for cohomological complexes
/// F^p A^n = sum over p' >= p. Returned as a coordinate subspace of A_n
/// over Q(i).
Subspace<Scalar> hodge_filtration(const BigradedComplex& a, int p, int n);

/// F_{k,k2}(x), internal homological indices.
TwistedVector project_Fkk(const BigradedComplex& a, const TwistedVector& x,
                          int k, int k2);
/// pi_p(x) = (x + (-1)^p sigma(x)) / 2.
TwistedVector project_pi(const BigradedComplex& a, const TwistedVector& x, int p);
/// sigma(x) on a degree vector.
CMatrix apply_sigma(const BigradedComplex& a, int n, const CMatrix& x);

/// Rational basis of {x in A_n : sigma(x) = (-1)^p x} inside Q^{2 dim A_n}.
/// n and p are given in the complex's declared grading.
Subspace<Rational> real_subspace(const BigradedComplex& a, int n, int p);
/// Same, with internal degree n.
Subspace<Rational> real_subspace_internal(const BigradedComplex& a, int n, int p);

/// Complex dimension of delbar-cohomology at bidegree b (declared grading).
std::size_t delbar_cohomology_dim(const BigradedComplex& a, Bidegree b);

/// Bidegree-preserving map between two bigraded complexes.
struct BigradedMap {
  std::map<Bidegree, CMatrix> blocks;  // source bidegree -> same bidegree

  CMatrix block(const BigradedComplex& src, const BigradedComplex& dst,
                Bidegree b) const;
  CMatrix degree_matrix(const BigradedComplex& src, const BigradedComplex& dst,
                        int n) const;
  QMatrix real_degree_matrix(const BigradedComplex& src,
                             const BigradedComplex& dst, int n) const;
};

/// Violations of: commutes with del and delbar, commutes with sigma.
std::vector<Violation> validate_map(const BigradedComplex& src,
                                    const BigradedComplex& dst,
                                    const BigradedMap& f);

}  // namespace fdeligne
