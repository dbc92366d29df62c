#include "fdeligne/chain.hpp"

#include <algorithm>

namespace fdeligne {

std::size_t ChainComplex::dim(int n) const {
  auto it = dims.find(n);
  return it == dims.end() ? 0 : it->second;
}

QMatrix ChainComplex::diff(int n) const {
  auto it = d.find(n);
  if (it == d.end()) return QMatrix(dim(n - 1), dim(n));
  if (it->second.rows() != dim(n - 1) || it->second.cols() != dim(n))
    throw DimensionMismatch("d_" + std::to_string(n) + " is " + it->second.shape());
  return it->second;
}

std::pair<int, int> ChainComplex::range() const {
  int lo = 0, hi = -1;
  bool first = true;
  for (const auto& [n, k] : dims) {
    if (k == 0) continue;
    if (first) {
      lo = hi = n;
      first = false;
    }
    lo = std::min(lo, n);
    hi = std::max(hi, n);
  }
  return {lo, hi};
}

std::vector<int> ChainComplex::square_defects() const {
  std::vector<int> out;
  const auto [lo, hi] = range();
  for (int n = lo + 2; n <= hi; ++n)
    if (!(diff(n - 1) * diff(n)).is_zero()) out.push_back(n);
  return out;
}

HomologyGroup homology(const ChainComplex& c, int n) {
  HomologyGroup h;
  const std::size_t dn = c.dim(n);
  h.cycles = kernel_basis(c.diff(n));
  h.boundaries = image_basis(c.diff(n + 1));
  if (h.cycles.rows() != dn) h.cycles = QMatrix(dn, 0);
  if (h.boundaries.rows() != dn) h.boundaries = QMatrix(dn, 0);
  h.reps = quotient(Subspace<Rational>(dn, h.cycles),
                    Subspace<Rational>(dn, h.boundaries))
               .basis;
  h.dim = h.reps.cols();
  return h;
}

std::map<int, std::size_t> betti(const ChainComplex& c) {
  std::map<int, std::size_t> out;
  const auto [lo, hi] = c.range();
  for (int n = lo; n <= hi; ++n) out[n] = homology(c, n).dim;
  return out;
}

QMatrix ChainMap::at(const ChainComplex& src, const ChainComplex& dst, int n) const {
  auto it = f.find(n);
  if (it == f.end()) return QMatrix(dst.dim(n), src.dim(n));
  if (it->second.rows() != dst.dim(n) || it->second.cols() != src.dim(n))
    throw DimensionMismatch("chain map in degree " + std::to_string(n) + " is " +
                            it->second.shape());
  return it->second;
}

namespace {

std::pair<int, int> joint_range(const ChainComplex& a, const ChainComplex& b) {
  auto [l1, h1] = a.range();
  auto [l2, h2] = b.range();
  if (h1 < l1) return {l2, h2};
  if (h2 < l2) return {l1, h1};
  return {std::min(l1, l2), std::max(h1, h2)};
}

}  // namespace

std::vector<int> chain_map_defects(const ChainComplex& src,
                                   const ChainComplex& dst, const ChainMap& f) {
  std::vector<int> out;
  const auto [lo, hi] = joint_range(src, dst);
  for (int n = lo; n <= hi + 1; ++n)
    if (!(dst.diff(n) * f.at(src, dst, n) == f.at(src, dst, n - 1) * src.diff(n)))
      out.push_back(n);
  return out;
}

std::size_t induced_rank(const ChainComplex& src, const ChainComplex& dst,
                         const ChainMap& f, int n) {
  const auto hs = homology(src, n);
  if (hs.dim == 0) return 0;
  const auto hd = homology(dst, n);
  const QMatrix img = f.at(src, dst, n) * hs.reps;
  return rank(hstack(hd.boundaries, img)) - hd.boundaries.cols();
}

ChainMap compose(const ChainComplex& a, const ChainComplex& b, const ChainComplex& c,
                 const ChainMap& g, const ChainMap& f) {
  ChainMap out;
  const auto [lo, hi] = joint_range(a, c);
  for (int n = lo; n <= hi; ++n) out.f[n] = g.at(b, c, n) * f.at(a, b, n);
  return out;
}

ChainComplex cone(const ChainComplex& x, const ChainComplex& y, const ChainMap& f) {
  ChainComplex c;
  auto [lo, hi] = joint_range(x, y);
  lo -= 1;
  for (int n = lo; n <= hi; ++n) {
    const std::size_t k = x.dim(n) + y.dim(n + 1);
    if (k) c.dims[n] = k;
  }
  for (int n = lo + 1; n <= hi; ++n) {
    if (c.dim(n) == 0 || c.dim(n - 1) == 0) continue;
    QMatrix m(c.dim(n - 1), c.dim(n));
    m.set_block(0, 0, x.diff(n));
    m.set_block(x.dim(n - 1), 0, f.at(x, y, n));
    m.set_block(x.dim(n - 1), x.dim(n), -y.diff(n + 1));
    c.d[n] = m;
  }
  return c;
}

std::size_t connecting_rank(const ChainComplex& a, const ChainComplex& b,
                            const ChainComplex& c, const ChainMap& i,
                            const ChainMap& j, int n) {
  const auto hc = homology(c, n);
  if (hc.dim == 0) return 0;
  const auto ha = homology(a, n - 1);
  // lift each representative through j, apply d, pull back through i
  const QMatrix jn = j.at(b, c, n);
  const auto lift = solve(jn, hc.reps);
  if (!lift) throw DimensionMismatch("j is not surjective in degree " + std::to_string(n));
  const QMatrix db = b.diff(n) * *lift;
  const auto back = solve(i.at(a, b, n - 1), db);
  if (!back) throw DimensionMismatch("boundary does not come from A in degree " +
                                     std::to_string(n - 1));
  return rank(hstack(ha.boundaries, *back)) - ha.boundaries.cols();
}

std::vector<std::string> ses_defects(const ChainComplex& a, const ChainComplex& b,
                                     const ChainComplex& c, const ChainMap& i,
                                     const ChainMap& j) {
  std::vector<std::string> out;
  auto [lo, hi] = joint_range(a, b);
  auto [l2, h2] = joint_range(b, c);
  lo = std::min(lo, l2);
  hi = std::max(hi, h2);
  for (int n = lo; n <= hi; ++n) {
    const QMatrix in = i.at(a, b, n), jn = j.at(b, c, n);
    const std::string at = " in degree " + std::to_string(n);
    if (rank(in) != a.dim(n)) out.push_back("injection not injective" + at);
    if (rank(jn) != c.dim(n)) out.push_back("surjection not surjective" + at);
    if (!(jn * in).is_zero()) out.push_back("composition nonzero" + at);
    if (a.dim(n) + c.dim(n) != b.dim(n)) out.push_back("dimensions do not add" + at);
  }
  for (const int n : chain_map_defects(a, b, i))
    out.push_back("injection not a chain map in degree " + std::to_string(n));
  for (const int n : chain_map_defects(b, c, j))
    out.push_back("surjection not a chain map in degree " + std::to_string(n));
  return out;
}

}  // namespace fdeligne
