#include "fdeligne/deligne.hpp"

namespace fdeligne {

namespace {

QMatrix twisted_filtered_basis(const BigradedComplex& a, int host, int twist, int k) {
  const std::size_t sz = 2 * a.degree_dim(host);
  if (sz == 0) return QMatrix(0, 0);
  QMatrix sig = a.real_sigma(host);
  sig -= (twist % 2 == 0 ? Rational(1) : Rational(-1)) * QMatrix::identity(sz);
  const QMatrix keep = QMatrix::identity(sz) - a.real_filtration(host, k, k);
  return kernel_basis(vstack(sig, keep));
}

QMatrix coords_in(const QMatrix& basis, const QMatrix& host, const char* what) {
  if (host.cols() == 0) return QMatrix(basis.cols(), 0);
  if (basis.cols() == 0) {
    if (!host.is_zero()) throw NotASubspace(std::string(what) + " leaves the target space");
    return QMatrix(0, host.cols());
  }
  auto x = solve(basis, host);
  if (!x) throw NotASubspace(std::string(what) + " leaves the target space");
  return *x;
}

QMatrix scaled(QMatrix m, const Rational& s) {
  m *= s;
  return m;
}

}  // namespace

QMatrix DeligneComplex::basis_at(int n) const {
  auto it = basis.find(n);
  if (it != basis.end()) return it->second;
  return QMatrix(2 * source.degree_dim(host_degree(n)), 0);
}

QMatrix DeligneComplex::coordinates(int n, const QMatrix& host) const {
  return coords_in(basis_at(n), host, "vector");
}

bool DeligneComplex::contains(int n, const QMatrix& host) const {
  try {
    coordinates(n, host);
    return true;
  } catch (const NotASubspace&) {
    return false;
  }
}

DeligneComplex build_deligne(const BigradedComplex& a, int p) {
  require_valid(a);
  DeligneComplex dc;
  dc.p = p;
  dc.source = a;
  const auto [lo, hi] = a.degree_range();
  if (hi < lo) return dc;
  for (int n = lo - 1; n <= hi; ++n) {
    const int host = dc.host_degree(n);
    const QMatrix b = dc.low(n) ? twisted_filtered_basis(a, host, p, p)
                                : twisted_filtered_basis(a, host, p + 1, n - p);
    if (b.cols() == 0) continue;
    dc.basis[n] = b;
    dc.chain.dims[n] = b.cols();
  }
  for (const auto& [n, b] : dc.basis) {
    if (dc.chain.dim(n - 1) == 0) continue;
    QMatrix m;
    if (n <= 2 * p)
      m = a.real_d(n);
    else if (n == 2 * p + 1)
      m = scaled(a.real_del(n) * a.real_delbar(n + 1), Rational(-2));
    else
      m = -(a.real_filtration(n, n - p - 1, n - p - 1) * a.real_d(n + 1));
    try {
      dc.chain.d[n] = dc.coordinates(n - 1, m * b);
    } catch (const NotASubspace&) {
      throw InvalidComplex("d_D leaves D_" + std::to_string(n - 1) + " for p = " +
                           std::to_string(p));
    }
  }
  return dc;
}

DeligneComplex build_deligne_declared(const BigradedComplex& a, int p) {
  return build_deligne(a, a.to_internal(p));
}

ChainComplex real_twisted_complex(const BigradedComplex& a, int p) {
  ChainComplex c;
  std::map<int, QMatrix> bases;
  const auto [lo, hi] = a.degree_range();
  for (int n = lo; n <= hi; ++n) {
    QMatrix b = real_subspace_internal(a, n, p).basis;
    if (b.cols() == 0) continue;
    c.dims[n] = b.cols();
    bases[n] = b;
  }
  for (const auto& [n, b] : bases) {
    auto it = bases.find(n - 1);
    if (it == bases.end()) continue;
    c.d[n] = coords_in(it->second, a.real_d(n) * b, "d");
  }
  return c;
}

std::string to_string(ConeConvention c) {
  return c == ConeConvention::standard ? "d(a,f,w) = (da, df, -a+f-dw)"
                                       : "d(a,f,w) = (da, df, a-f+dw)";
}

std::size_t ConeComplex::real_dim(int n) const {
  auto it = real_basis.find(n);
  return it == real_basis.end() ? 0 : it->second.cols();
}

std::size_t ConeComplex::filt_dim(int n) const {
  auto it = filt_basis.find(n);
  return it == filt_basis.end() ? 0 : it->second.cols();
}

namespace {

struct ConeLayout {
  std::size_t r, f, w;
  std::size_t total() const { return r + f + w; }
};

ConeLayout layout(const BigradedComplex& a, const ConeComplex& c, int n) {
  return {c.real_dim(n), c.filt_dim(n), 2 * a.degree_dim(n + 1)};
}

QMatrix real_basis_or_empty(const ConeComplex& c, const BigradedComplex& a, int n) {
  auto it = c.real_basis.find(n);
  return it == c.real_basis.end() ? QMatrix(2 * a.degree_dim(n), 0) : it->second;
}

QMatrix filt_basis_or_empty(const ConeComplex& c, const BigradedComplex& a, int n) {
  auto it = c.filt_basis.find(n);
  return it == c.filt_basis.end() ? QMatrix(2 * a.degree_dim(n), 0) : it->second;
}

}  // namespace

ConeComplex build_cone(const BigradedComplex& a, int p, ConeConvention conv) {
  require_valid(a);
  ConeComplex c;
  c.p = p;
  c.convention = conv;
  const auto [lo, hi] = a.degree_range();
  if (hi < lo) return c;
  for (int n = lo; n <= hi; ++n) {
    QMatrix rb = real_subspace_internal(a, n, p).basis;
    if (rb.cols()) c.real_basis[n] = rb;
    QMatrix fb = image_basis(a.real_filtration(n, p));
    if (fb.cols()) c.filt_basis[n] = fb;
  }
  const Rational s = conv == ConeConvention::standard ? 1 : -1;
  for (int n = lo - 1; n <= hi; ++n) {
    const auto l = layout(a, c, n);
    if (l.total()) c.chain.dims[n] = l.total();
  }
  for (int n = lo; n <= hi; ++n) {
    const auto src = layout(a, c, n), dst = layout(a, c, n - 1);
    if (src.total() == 0 || dst.total() == 0) continue;
    QMatrix m(dst.total(), src.total());
    const QMatrix rn = real_basis_or_empty(c, a, n), fn = filt_basis_or_empty(c, a, n);
    const QMatrix dn = a.real_d(n);
    if (dst.r && src.r) m.set_block(0, 0, coords_in(real_basis_or_empty(c, a, n - 1), dn * rn, "d"));
    if (dst.f && src.f)
      m.set_block(dst.r, src.r, coords_in(filt_basis_or_empty(c, a, n - 1), dn * fn, "d"));
    // third slot lives in A_n with the identity basis
    if (dst.w) {
      if (src.r) m.set_block(dst.r + dst.f, 0, scaled(rn, -s));
      if (src.f) m.set_block(dst.r + dst.f, src.r, scaled(fn, s));
      if (src.w) m.set_block(dst.r + dst.f, src.r + src.f, scaled(a.real_d(n + 1), -s));
    }
    c.chain.d[n] = m;
  }
  return c;
}

HomotopyData homotopy_maps_for(const BigradedComplex& a, int p, ConeConvention conv) {
  HomotopyData hd;
  hd.convention = conv;
  hd.deligne = build_deligne(a, p);
  hd.cone = build_cone(a, p, conv);
  const auto& D = hd.deligne;
  const auto& C = hd.cone;
  const auto [lo, hi] = a.degree_range();
  if (hi < lo) return hd;

  auto fail = [&](const std::string& s) { hd.failures.push_back(s); };
  const Rational two = 2;

  for (int n = lo - 1; n <= hi; ++n) {
    const auto l = layout(a, C, n);
    const QMatrix rn = real_basis_or_empty(C, a, n), fn = filt_basis_or_empty(C, a, n);
    const QMatrix bd = D.basis_at(n);
    const std::size_t dd = bd.cols();
    const std::size_t host = 2 * a.degree_dim(D.host_degree(n));
    const std::size_t an = 2 * a.degree_dim(n), an1 = 2 * a.degree_dim(n + 1);
    try {
      // psi : cone_n -> D_n, first in host coordinates
      QMatrix psi_host(host, l.total());
      if (D.low(n)) {
        if (l.r) psi_host.set_block(0, 0, a.real_filtration(n, p, p) * rn);
        if (l.w)
          psi_host.set_block(0, l.r + l.f,
                             scaled(a.real_pi(n, p) * a.real_del(n + 1) *
                                        a.real_component(n + 1, p + 1),
                                    two));
      } else if (l.w) {
        psi_host.set_block(0, l.r + l.f,
                           a.real_pi(n + 1, p + 1) *
                               a.real_filtration(n + 1, n - p, n - p));
      }
      if (dd || l.total()) hd.psi.f[n] = coords_in(bd, psi_host, "psi");

      // phi : D_n -> cone_n
      QMatrix phi(l.total(), dd);
      if (dd) {
        if (D.low(n)) {
          if (l.r) phi.set_block(0, 0, coords_in(rn, bd, "phi"));
          if (l.f) phi.set_block(l.r, 0, coords_in(fn, bd, "phi"));
        } else {
          const QMatrix dx = a.real_del(n + 1) * a.real_component(n + 1, p + 1) * bd;
          const QMatrix dbx = a.real_delbar(n + 1) * a.real_component(n + 1, n - p) * bd;
          if (l.r) phi.set_block(0, 0, coords_in(rn, dx - dbx, "phi"));
          else if (!(dx - dbx).is_zero()) throw NotASubspace("phi leaves A^R");
          if (l.f) phi.set_block(l.r, 0, coords_in(fn, scaled(dx, two), "phi"));
          else if (!dx.is_zero()) throw NotASubspace("phi leaves F_p");
          if (l.w) phi.set_block(l.r + l.f, 0, bd);
        }
      }
      if (dd || l.total()) hd.phi.f[n] = phi;

      // h : cone_n -> cone_{n+1}; only the third slot contributes
      const auto l1 = layout(a, C, n + 1);
      QMatrix h(l1.total(), l.total());
      if (l.w && an1) {
        QMatrix ah, fh;
        if (!D.low(n)) {
          ah = a.real_pi(n + 1, p) * (a.real_filtration(n + 1, kNoBound, p) +
                                      a.real_filtration(n + 1, kNoBound, n - p));
          fh = scaled(a.real_filtration(n + 1, p) * a.real_pi(n + 1, p + 1), -two);
        } else {
          ah = scaled(a.real_pi(n + 1, p) * a.real_filtration(n + 1, kNoBound, n - p), two);
          fh = -(a.real_filtration(n + 1, p, p) +
                 scaled(a.real_filtration(n + 1, n - p) * a.real_pi(n + 1, p + 1), two));
        }
        const QMatrix rn1 = real_basis_or_empty(C, a, n + 1);
        const QMatrix fn1 = filt_basis_or_empty(C, a, n + 1);
        if (l1.r) h.set_block(0, l.r + l.f, coords_in(rn1, ah, "h"));
        else if (!ah.is_zero()) throw NotASubspace("h leaves A^R");
        if (l1.f) h.set_block(l1.r, l.r + l.f, coords_in(fn1, fh, "h"));
        else if (!fh.is_zero()) throw NotASubspace("h leaves F_p");
      }
      (void)an;
      if (l.total() || l1.total()) hd.h[n] = h;
    } catch (const NotASubspace& e) {
      fail("degree " + std::to_string(n) + ": " + e.what());
    }
  }
  if (!hd.failures.empty()) return hd;

  auto hmat = [&](int n) {
    auto it = hd.h.find(n);
    return it == hd.h.end() ? QMatrix(C.chain.dim(n + 1), C.chain.dim(n)) : it->second;
  };
  for (int n = lo - 1; n <= hi; ++n) {
    const QMatrix ps = hd.psi.at(C.chain, D.chain, n);
    const QMatrix ph = hd.phi.at(D.chain, C.chain, n);
    if (!(ps * ph == QMatrix::identity(D.chain.dim(n))))
      fail("psi phi != 1 in degree " + std::to_string(n));
    const QMatrix lhs = ph * ps - QMatrix::identity(C.chain.dim(n));
    const QMatrix rhs = C.chain.diff(n + 1) * hmat(n) + hmat(n - 1) * C.chain.diff(n);
    if (!(lhs == rhs)) fail("phi psi - 1 != dh + hd in degree " + std::to_string(n));
  }
  for (int n : chain_map_defects(C.chain, D.chain, hd.psi))
    fail("psi is not a chain map in degree " + std::to_string(n));
  for (int n : chain_map_defects(D.chain, C.chain, hd.phi))
    fail("phi is not a chain map in degree " + std::to_string(n));
  return hd;
}

HomotopyData homotopy_maps(const BigradedComplex& a, int p) {
  HomotopyData first = homotopy_maps_for(a, p, ConeConvention::standard);
  if (first.failures.empty()) return first;
  HomotopyData second = homotopy_maps_for(a, p, ConeConvention::negated);
  if (second.failures.empty()) return second;
  std::string msg = "'" + a.name + "', p = " + std::to_string(p) + ":";
  for (const auto& f : first.failures) msg += " [" + f + "]";
  throw HomotopyIdentityFailure(msg);
}

QMatrix r_map(const BigradedComplex& a, int n, int p, const QMatrix& x) {
  if (n <= 2 * p) return x;
  // host is A_{n+1}; r = 2 pi_p(F_p d x) in A_n
  QMatrix r = a.real_pi(n, p) * a.real_filtration(n, p) * a.real_d(n + 1) * x;
  r *= Rational(2);
  return r;
}

QMatrix deligne_product(const ProductSpaces& s, int n1, int p1, const QMatrix& x,
                        int n2, int p2, const QMatrix& y) {
  if (s.w.offset != Bidegree{0, 0})
    throw UnsupportedRegime("Deligne product needs a product of zero offset");
  // Cohomological indices: n = -n1 etc. "high" means n < 2p, i.e. the
  // host is one degree off.
  const bool hx = n1 > 2 * p1, hy = n2 > 2 * p2;
  const int n = n1 + n2, p = p1 + p2;
  const int hx_deg = hx ? n1 + 1 : n1, hy_deg = hy ? n2 + 1 : n2;
  auto mul = [&](int d1, const QMatrix& u, int d2, const QMatrix& v) {
    return wedge_real(s.x, s.y, s.z, s.w, d1, u, d2, v);
  };
  const BigradedComplex& z = s.z;
  if (hx && hy) {
    QMatrix a = mul(n1, r_map(s.x, n1, p1, x), hy_deg, y);
    if (n1 % 2 != 0) a = -a;
    return a + mul(hx_deg, x, n2, r_map(s.y, n2, p2, y));
  }
  if (!hx && !hy) return mul(n1, x, n2, y);
  const QMatrix xy = mul(hx_deg, x, hy_deg, y);  // internal degree n + 1
  if (n > 2 * p) {
    // result is high: pi_{p+q-1} F^{n+m-p-q, n+m-p-q}(x ^ y), with (-1)^deg x
    // when the low factor sits on the left
    QMatrix out = z.real_pi(n + 1, p + 1) * z.real_filtration(n + 1, n - p, n - p) * xy;
    if (!hx && n1 % 2 != 0) out = -out;
    return out;
  }
  QMatrix lead = hx ? mul(n1, r_map(s.x, n1, p1, x), n2, y)
                    : mul(n1, x, n2, r_map(s.y, n2, p2, y));
  lead = z.real_filtration(n, p) * lead;
  QMatrix corr = z.real_pi(n, p) * z.real_del(n + 1) * z.real_component(n + 1, p + 1) * xy;
  corr *= Rational(2);
  // the low-degree factor on the left contributes (-1)^deg
  if (!hx && n1 % 2 != 0) corr = -corr;
  return lead + corr;
}

ChainMap deligne_chain_map(const BigradedComplex& src, const BigradedComplex& dst,
                     const BigradedMap& f, const DeligneComplex& ds,
                     const DeligneComplex& dd) {
  ChainMap cm;
  std::vector<int> degrees;
  for (const auto& [n, k] : ds.chain.dims) degrees.push_back(n);
  for (const auto& [n, k] : dd.chain.dims) degrees.push_back(n);
  for (int n : degrees) {
    const QMatrix bs = ds.basis_at(n);
    const QMatrix bd = dd.basis_at(n);
    if (bs.cols() == 0) {
      cm.f[n] = QMatrix(bd.cols(), 0);
      continue;
    }
    const QMatrix host = f.real_degree_matrix(src, dst, ds.host_degree(n)) * bs;
    cm.f[n] = dd.coordinates(n, host);
  }
  return cm;
}


}  // namespace fdeligne
