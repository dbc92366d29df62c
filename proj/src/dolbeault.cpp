#include "fdeligne/dolbeault.hpp"

#include <algorithm>

namespace fdeligne {

std::string to_string(Bidegree b) {
  return "(" + std::to_string(b.p) + "," + std::to_string(b.q) + ")";
}

std::string to_string(Variance v) {
  return v == Variance::homological ? "homological" : "cohomological";
}

int BigradedComplex::dim(Bidegree b) const {
  auto it = dims.find(b);
  return it == dims.end() ? 0 : it->second;
}

namespace {

CMatrix block_or_zero(const std::map<Bidegree, CMatrix>& blocks, Bidegree src,
                      std::size_t rows, std::size_t cols) {
  auto it = blocks.find(src);
  if (it == blocks.end()) return CMatrix(rows, cols);
  if (it->second.rows() != rows || it->second.cols() != cols)
    throw DimensionMismatch("block at " + to_string(src) + " has shape " +
                            it->second.shape() + ", expected " +
                            std::to_string(rows) + "x" + std::to_string(cols));
  return it->second;
}

}  // namespace

CMatrix BigradedComplex::del_block(Bidegree src) const {
  return block_or_zero(del, src, dim({src.p - 1, src.q}), dim(src));
}

CMatrix BigradedComplex::delbar_block(Bidegree src) const {
  return block_or_zero(delbar, src, dim({src.p, src.q - 1}), dim(src));
}

CMatrix BigradedComplex::sigma_block(Bidegree src) const {
  return block_or_zero(sigma, src, dim(src.swapped()), dim(src));
}

bool BigradedComplex::empty() const {
  return std::none_of(dims.begin(), dims.end(),
                      [](const auto& kv) { return kv.second > 0; });
}

std::pair<int, int> BigradedComplex::degree_range() const {
  int lo = 0, hi = -1;
  bool first = true;
  for (const auto& [b, d] : dims) {
    if (d <= 0) continue;
    if (first) {
      lo = hi = b.total();
      first = false;
    } else {
      lo = std::min(lo, b.total());
      hi = std::max(hi, b.total());
    }
  }
  return {lo, hi};
}

std::vector<Bidegree> BigradedComplex::bidegrees_in_degree(int n) const {
  std::vector<Bidegree> out;
  for (const auto& [b, d] : dims)
    if (d > 0 && b.total() == n) out.push_back(b);
  // std::map orders by (p, q), so this is already by first index.
  return out;
}

std::size_t BigradedComplex::degree_dim(int n) const {
  std::size_t total = 0;
  for (const auto& b : bidegrees_in_degree(n)) total += static_cast<std::size_t>(dim(b));
  return total;
}

std::size_t BigradedComplex::offset(Bidegree b) const {
  std::size_t off = 0;
  for (const auto& c : bidegrees_in_degree(b.total())) {
    if (c == b) return off;
    off += static_cast<std::size_t>(dim(c));
  }
  return off;
}

CMatrix BigradedComplex::del_matrix(int n) const {
  CMatrix m(degree_dim(n - 1), degree_dim(n));
  for (const auto& b : bidegrees_in_degree(n)) {
    const Bidegree t{b.p - 1, b.q};
    if (dim(t) == 0) continue;
    m.set_block(offset(t), offset(b), del_block(b));
  }
  return m;
}

CMatrix BigradedComplex::delbar_matrix(int n) const {
  CMatrix m(degree_dim(n - 1), degree_dim(n));
  for (const auto& b : bidegrees_in_degree(n)) {
    const Bidegree t{b.p, b.q - 1};
    if (dim(t) == 0) continue;
    m.set_block(offset(t), offset(b), delbar_block(b));
  }
  return m;
}

CMatrix BigradedComplex::d_matrix(int n) const { return del_matrix(n) + delbar_matrix(n); }

CMatrix BigradedComplex::sigma_matrix(int n) const {
  const std::size_t sz = degree_dim(n);
  CMatrix m(sz, sz);
  for (const auto& b : bidegrees_in_degree(n)) {
    const Bidegree t = b.swapped();
    if (dim(t) == 0) continue;
    m.set_block(offset(t), offset(b), sigma_block(b));
  }
  return m;
}

QMatrix BigradedComplex::real_d(int n) const { return realify_linear(d_matrix(n)); }
QMatrix BigradedComplex::real_del(int n) const { return realify_linear(del_matrix(n)); }
QMatrix BigradedComplex::real_delbar(int n) const {
  return realify_linear(delbar_matrix(n));
}
QMatrix BigradedComplex::real_sigma(int n) const {
  return realify_antilinear(sigma_matrix(n));
}

namespace {

QMatrix real_coordinate_projector(const BigradedComplex& a, int n,
                                  bool (*keep)(Bidegree, int, int), int k,
                                  int k2) {
  const std::size_t sz = a.degree_dim(n);
  QMatrix m(2 * sz, 2 * sz);
  for (const auto& b : a.bidegrees_in_degree(n)) {
    if (!keep(b, k, k2)) continue;
    const std::size_t off = a.offset(b);
    for (int j = 0; j < a.dim(b); ++j) {
      m(off + j, off + j) = 1;
      m(sz + off + j, sz + off + j) = 1;
    }
  }
  return m;
}

}  // namespace

QMatrix BigradedComplex::real_filtration(int n, int k, int k2) const {
  return real_coordinate_projector(
      *this, n, [](Bidegree b, int x, int y) { return b.p <= x && b.q <= y; }, k, k2);
}

QMatrix BigradedComplex::real_component(int n, int a) const {
  return real_coordinate_projector(
      *this, n, [](Bidegree b, int x, int) { return b.p == x; }, a, 0);
}

QMatrix BigradedComplex::real_pi(int n, int p) const {
  const std::size_t sz = 2 * degree_dim(n);
  QMatrix m = QMatrix::identity(sz);
  QMatrix s = real_sigma(n);
  if (p % 2 != 0) s = -s;
  m += s;
  m *= Rational(1, 2);
  return m;
}

void BigradedComplex::normalize() {
  for (auto it = dims.begin(); it != dims.end();) {
    if (it->second <= 0)
      it = dims.erase(it);
    else
      ++it;
  }
  auto prune = [&](std::map<Bidegree, CMatrix>& blocks) {
    for (auto it = blocks.begin(); it != blocks.end();) {
      if (it->second.rows() == 0 || it->second.cols() == 0)
        it = blocks.erase(it);
      else
        ++it;
    }
  };
  prune(del);
  prune(delbar);
  prune(sigma);
}

CMatrix TwistedVector::component(const BigradedComplex& a, Bidegree b) const {
  if (b.total() != degree || a.dim(b) == 0) return CMatrix(0, 1);
  return coords.block(a.offset(b), 0, static_cast<std::size_t>(a.dim(b)), 1);
}

namespace {

void check_shape(std::vector<Violation>& out, const std::string& what,
                 const std::map<Bidegree, CMatrix>& blocks,
                 const BigradedComplex& a, Bidegree (*target)(Bidegree)) {
  for (const auto& [src, m] : blocks) {
    const auto rows = static_cast<std::size_t>(a.dim(target(src)));
    const auto cols = static_cast<std::size_t>(a.dim(src));
    if (m.rows() != rows || m.cols() != cols)
      out.push_back({"block-shape", what + " at " + to_string(src) + " is " +
                                        m.shape() + ", expected " +
                                        std::to_string(rows) + "x" +
                                        std::to_string(cols)});
  }
}

}  // namespace

std::vector<Violation> validate_dolbeault(const BigradedComplex& a) {
  std::vector<Violation> out;
  check_shape(out, "del", a.del, a, [](Bidegree b) { return Bidegree{b.p - 1, b.q}; });
  check_shape(out, "delbar", a.delbar, a,
              [](Bidegree b) { return Bidegree{b.p, b.q - 1}; });
  check_shape(out, "sigma", a.sigma, a, [](Bidegree b) { return b.swapped(); });
  if (!out.empty()) return out;

  for (const auto& [b, d] : a.dims) {
    if (d <= 0) continue;
    if (a.dim(b.swapped()) != d)
      out.push_back({"conjugation symmetry",
                     "dim " + to_string(b) + " = " + std::to_string(d) + " but dim " +
                         to_string(b.swapped()) + " = " +
                         std::to_string(a.dim(b.swapped()))});
  }
  for (const auto& [b, d] : a.dims) {
    if (d <= 0) continue;
    const Bidegree l{b.p - 1, b.q}, r{b.p, b.q - 1}, lr{b.p - 1, b.q - 1},
        ll{b.p - 2, b.q}, rr{b.p, b.q - 2};
    if (a.dim(ll) > 0 && a.dim(l) > 0 && !(a.del_block(l) * a.del_block(b)).is_zero())
      out.push_back({"del-squared", "at " + to_string(b)});
    if (a.dim(rr) > 0 && a.dim(r) > 0 &&
        !(a.delbar_block(r) * a.delbar_block(b)).is_zero())
      out.push_back({"delbar-squared", "at " + to_string(b)});
    if (a.dim(lr) > 0) {
      CMatrix s(static_cast<std::size_t>(a.dim(lr)), static_cast<std::size_t>(d));
      if (a.dim(r) > 0) s += a.del_block(r) * a.delbar_block(b);
      if (a.dim(l) > 0) s += a.delbar_block(l) * a.del_block(b);
      if (!s.is_zero()) out.push_back({"del-delbar-anticommute", "at " + to_string(b)});
    }
    if (a.dim(b.swapped()) == d) {
      const CMatrix inv = a.sigma_block(b.swapped()) * a.sigma_block(b).conjugate();
      if (!(inv == CMatrix::identity(static_cast<std::size_t>(d))))
        out.push_back({"sigma-involution", "at " + to_string(b)});
      // sigma(del x) = delbar(sigma x)
      if (a.dim(l) > 0 || a.dim(b.swapped() + Bidegree{0, -1}) > 0) {
        CMatrix lhs = a.sigma_block(l) * a.del_block(b).conjugate();
        CMatrix rhs = a.delbar_block(b.swapped()) * a.sigma_block(b);
        if (lhs.rows() == rhs.rows() && !(lhs == rhs))
          out.push_back({"sigma-intertwines-del", "at " + to_string(b)});
        if (lhs.rows() != rhs.rows())
          out.push_back({"conjugation symmetry", "targets of del/delbar at " +
                                                     to_string(b) + " differ"});
      }
    }
  }
  return out;
}

bool is_valid(const BigradedComplex& a) { return validate_dolbeault(a).empty(); }

void require_valid(const BigradedComplex& a) {
  const auto v = validate_dolbeault(a);
  if (v.empty()) return;
  std::string msg = "'" + a.name + "':";
  for (const auto& x : v) msg += " [" + x.kind + " " + x.where + "]";
  throw InvalidComplex(msg);
}

Subspace<Scalar> hodge_filtration(const BigradedComplex& a, int p, int n) {
  const int ni = a.to_internal(n);
  const int pi = a.to_internal(p);
  const std::size_t sz = a.degree_dim(ni);
  std::vector<std::size_t> keep;
  for (const auto& b : a.bidegrees_in_degree(ni))
    if (b.p <= pi)
      for (int j = 0; j < a.dim(b); ++j) keep.push_back(a.offset(b) + j);
  return {sz, CMatrix::identity(sz).cols_at(keep)};
}

TwistedVector project_Fkk(const BigradedComplex& a, const TwistedVector& x, int k,
                          int k2) {
  TwistedVector out{x.degree, CMatrix(x.coords.rows(), 1)};
  for (const auto& b : a.bidegrees_in_degree(x.degree)) {
    if (b.p > k || b.q > k2) continue;
    const std::size_t off = a.offset(b);
    for (int j = 0; j < a.dim(b); ++j) out.coords(off + j, 0) = x.coords(off + j, 0);
  }
  return out;
}

CMatrix apply_sigma(const BigradedComplex& a, int n, const CMatrix& x) {
  return a.sigma_matrix(n) * x.conjugate();
}

TwistedVector project_pi(const BigradedComplex& a, const TwistedVector& x, int p) {
  CMatrix s = apply_sigma(a, x.degree, x.coords);
  if (p % 2 != 0) s = -s;
  CMatrix sum = x.coords + s;
  sum *= Scalar(Rational(1, 2));
  return {x.degree, sum};
}

Subspace<Rational> real_subspace_internal(const BigradedComplex& a, int n, int p) {
  const std::size_t sz = 2 * a.degree_dim(n);
  if (sz == 0) return Subspace<Rational>::zero(0);
  QMatrix m = a.real_sigma(n);
  const Rational sign = (p % 2 == 0) ? 1 : -1;
  m -= sign * QMatrix::identity(sz);
  return kernel(m);
}

Subspace<Rational> real_subspace(const BigradedComplex& a, int n, int p) {
  return real_subspace_internal(a, a.to_internal(n), a.to_internal(p));
}

CMatrix BigradedMap::block(const BigradedComplex& src, const BigradedComplex& dst,
                           Bidegree b) const {
  return block_or_zero(blocks, b, static_cast<std::size_t>(dst.dim(b)),
                       static_cast<std::size_t>(src.dim(b)));
}

CMatrix BigradedMap::degree_matrix(const BigradedComplex& src,
                                   const BigradedComplex& dst, int n) const {
  CMatrix m(dst.degree_dim(n), src.degree_dim(n));
  for (const auto& b : src.bidegrees_in_degree(n)) {
    if (dst.dim(b) == 0) continue;
    m.set_block(dst.offset(b), src.offset(b), block(src, dst, b));
  }
  return m;
}

QMatrix BigradedMap::real_degree_matrix(const BigradedComplex& src,
                                        const BigradedComplex& dst, int n) const {
  return realify_linear(degree_matrix(src, dst, n));
}

std::vector<Violation> validate_map(const BigradedComplex& src,
                                    const BigradedComplex& dst,
                                    const BigradedMap& f) {
  std::vector<Violation> out;
  const auto [lo1, hi1] = src.degree_range();
  const auto [lo2, hi2] = dst.degree_range();
  const int lo = std::min(lo1, lo2), hi = std::max(hi1, hi2);
  for (int n = lo; n <= hi; ++n) {
    const CMatrix fn = f.degree_matrix(src, dst, n);
    const CMatrix fm = f.degree_matrix(src, dst, n - 1);
    if (!(fm * src.del_matrix(n) == dst.del_matrix(n) * fn))
      out.push_back({"map-del", "degree " + std::to_string(n)});
    if (!(fm * src.delbar_matrix(n) == dst.delbar_matrix(n) * fn))
      out.push_back({"map-delbar", "degree " + std::to_string(n)});
    if (!(fn * src.sigma_matrix(n) == dst.sigma_matrix(n) * fn.conjugate()))
      out.push_back({"map-sigma", "degree " + std::to_string(n)});
  }
  return out;
}

std::size_t delbar_cohomology_dim(const BigradedComplex& a, Bidegree b) {
  const Bidegree in = a.to_internal(b);
  const std::size_t dim = static_cast<std::size_t>(a.dim(in));
  if (dim == 0) return 0;
  const Bidegree below{in.p, in.q - 1}, above{in.p, in.q + 1};
  const std::size_t kernel = a.dim(below) ? dim - rank(a.delbar_block(in)) : dim;
  const std::size_t image = a.dim(above) ? rank(a.delbar_block(above)) : 0;
  return kernel - image;
}

}  // namespace fdeligne
