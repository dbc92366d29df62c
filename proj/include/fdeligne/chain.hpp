#pragma once

// Finite chain complexes of rational vector spaces, homological grading:
// d_n : C_n -> C_{n-1}. Homology, induced maps, cones and the connecting
// map of a short exact sequence.

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "fdeligne/exact.hpp"

namespace fdeligne {

struct ChainComplex {
  std::map<int, std::size_t> dims;
  std::map<int, QMatrix> d;  // keyed by source degree

  std::size_t dim(int n) const;
  /// d_n as a dim(n-1) x dim(n) matrix; zero when absent.
  QMatrix diff(int n) const;
  /// {lo, hi} over degrees with nonzero dimension; {0, -1} when empty.
  std::pair<int, int> range() const;
  /// Degrees n with d_{n-1} d_n != 0.
  std::vector<int> square_defects() const;
  bool is_complex() const { return square_defects().empty(); }
};

struct HomologyGroup {
  std::size_t dim = 0;
  QMatrix cycles;      // basis of Z_n
  QMatrix boundaries;  // basis of B_n
  QMatrix reps;        // columns of Z_n completing B_n: a basis of H_n
};

HomologyGroup homology(const ChainComplex& c, int n);
/// dim H_n for every n in the support range.
std::map<int, std::size_t> betti(const ChainComplex& c);

/// Degree-preserving linear map; f_n : X_n -> Y_n, keyed by degree.
struct ChainMap {
  std::map<int, QMatrix> f;

  QMatrix at(const ChainComplex& src, const ChainComplex& dst, int n) const;
};

/// Degrees where d f != f d.
std::vector<int> chain_map_defects(const ChainComplex& src,
                                   const ChainComplex& dst, const ChainMap& f);
/// Rank of H_n(f).
std::size_t induced_rank(const ChainComplex& src, const ChainComplex& dst,
                         const ChainMap& f, int n);
ChainMap compose(const ChainComplex& a, const ChainComplex& b,
                 const ChainComplex& c, const ChainMap& g, const ChainMap& f);

/// Simple complex of f: C_n = X_n + Y_{n+1}, d(x, y) = (dx, f x - dy).
ChainComplex cone(const ChainComplex& x, const ChainComplex& y, const ChainMap& f);

/// Rank of the connecting map H_n(C) -> H_{n-1}(A) of 0 -> A -i-> B -j-> C -> 0.
std::size_t connecting_rank(const ChainComplex& a, const ChainComplex& b,
                            const ChainComplex& c, const ChainMap& i,
                            const ChainMap& j, int n);

/// Kernel/image checks for 0 -> A -> B -> C -> 0 in every degree. Returns
/// the list of failing degrees with a reason.
std::vector<std::string> ses_defects(const ChainComplex& a, const ChainComplex& b,
                                     const ChainComplex& c, const ChainMap& i,
                                     const ChainMap& j);

}  // namespace fdeligne
