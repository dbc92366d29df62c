#include "fdeligne/algebra.hpp"

namespace fdeligne {

CMatrix wedge(const BigradedComplex& xs, const BigradedComplex& ys,
              const BigradedComplex& zs, const Wedge& w, int n1, const CMatrix& x,
              int n2, const CMatrix& y) {
  const int nt = n1 + n2 + w.degree_offset();
  CMatrix out(zs.degree_dim(nt), 1);
  if (x.rows() != xs.degree_dim(n1) || y.rows() != ys.degree_dim(n2))
    throw DimensionMismatch("wedge factors have " + x.shape() + " and " + y.shape());
  for (const auto& b1 : xs.bidegrees_in_degree(n1)) {
    const CMatrix xb = x.block(xs.offset(b1), 0, static_cast<std::size_t>(xs.dim(b1)), 1);
    if (xb.is_zero()) continue;
    for (const auto& b2 : ys.bidegrees_in_degree(n2)) {
      const Bidegree t = b1 + b2 + w.offset;
      if (zs.dim(t) == 0) continue;
      auto it = w.table.find({b1, b2});
      if (it == w.table.end()) continue;
      const CMatrix yb =
          y.block(ys.offset(b2), 0, static_cast<std::size_t>(ys.dim(b2)), 1);
      if (yb.is_zero()) continue;
      const std::size_t d1 = static_cast<std::size_t>(xs.dim(b1));
      const std::size_t d2 = static_cast<std::size_t>(ys.dim(b2));
      CMatrix tensor(d1 * d2, 1);
      for (std::size_t i = 0; i < d1; ++i)
        for (std::size_t j = 0; j < d2; ++j) tensor(i * d2 + j, 0) = xb(i, 0) * yb(j, 0);
      const CMatrix part = it->second * tensor;
      const std::size_t off = zs.offset(t);
      for (std::size_t r = 0; r < part.rows(); ++r) out(off + r, 0) += part(r, 0);
    }
  }
  return out;
}

QMatrix wedge_real(const BigradedComplex& xs, const BigradedComplex& ys,
                   const BigradedComplex& zs, const Wedge& w, int n1,
                   const QMatrix& x, int n2, const QMatrix& y) {
  return realify_vectors(
      wedge(xs, ys, zs, w, n1, complexify_vectors(x), n2, complexify_vectors(y)));
}

CMatrix left_multiplication(const BigradedComplex& xs, const BigradedComplex& ys,
                            const BigradedComplex& zs, const Wedge& w, int n1,
                            const CMatrix& x, int n2) {
  const std::size_t cols = ys.degree_dim(n2);
  CMatrix m(zs.degree_dim(n1 + n2 + w.degree_offset()), cols);
  for (std::size_t j = 0; j < cols; ++j) {
    CMatrix e(cols, 1);
    e(j, 0) = 1;
    m.set_block(0, j, wedge(xs, ys, zs, w, n1, x, n2, e));
  }
  return m;
}

Wedge descend(const Wedge& w, const BigradedComplex& big,
              const std::map<Bidegree, CMatrix>& lift,
              const std::map<Bidegree, CMatrix>& project,
              const BigradedComplex& small) {
  Wedge out;
  out.offset = w.offset;
  for (const auto& [b1, d1] : small.dims) {
    for (const auto& [b2, d2] : small.dims) {
      const Bidegree t = b1 + b2 + w.offset;
      if (small.dim(t) == 0) continue;
      auto it = w.table.find({b1, b2});
      if (it == w.table.end()) continue;
      const CMatrix& l1 = lift.at(b1);
      const CMatrix& l2 = lift.at(b2);
      const CMatrix& pr = project.at(t);
      CMatrix m(static_cast<std::size_t>(small.dim(t)),
                static_cast<std::size_t>(d1 * d2));
      const std::size_t bd2 = static_cast<std::size_t>(big.dim(b2));
      for (int i = 0; i < d1; ++i)
        for (int j = 0; j < d2; ++j) {
          CMatrix tensor(static_cast<std::size_t>(big.dim(b1)) * bd2, 1);
          for (std::size_t a = 0; a < l1.rows(); ++a)
            for (std::size_t b = 0; b < bd2; ++b)
              tensor(a * bd2 + b, 0) = l1(a, i) * l2(b, j);
          m.set_block(0, static_cast<std::size_t>(i * d2 + j), pr * (it->second * tensor));
        }
      out.table[{b1, b2}] = m;
    }
  }
  return out;
}

}  // namespace fdeligne
