#include "fdeligne/duality.hpp"

#include <tuple>

namespace fdeligne {

BigradedComplex dual_of(const BigradedComplex& a) {
  BigradedComplex b;
  b.name = "dual(" + a.name + ")";
  b.variance = Variance::homological;
  for (const auto& [beta, k] : a.dims)
    if (k > 0) b.dims[beta.negated()] = k;
  for (const auto& [g, k] : b.dims) {
    const Scalar sign = g.total() % 2 == 0 ? 1 : -1;
    const Bidegree l{g.p - 1, g.q}, r{g.p, g.q - 1};
    if (b.dim(l) > 0) {
      CMatrix m = a.del_block({-g.p + 1, -g.q}).transpose() * sign;
      if (!m.is_zero()) b.del[g] = m;
    }
    if (b.dim(r) > 0) {
      CMatrix m = a.delbar_block({-g.p, -g.q + 1}).transpose() * sign;
      if (!m.is_zero()) b.delbar[g] = m;
    }
    b.sigma[g] = a.sigma_block({-g.q, -g.p}).conjugate().transpose();
  }
  return b;
}

namespace {

CMatrix evaluation_matrix(const BigradedComplex& a, const BigradedComplex& b, int n) {
  CMatrix e(b.degree_dim(n), a.degree_dim(-n));
  for (const auto& g : b.bidegrees_in_degree(n)) {
    const Bidegree beta = g.negated();
    for (int i = 0; i < b.dim(g); ++i) e(b.offset(g) + i, a.offset(beta) + i) = 1;
  }
  return e;
}

}  // namespace

Scalar PairingData::evaluate(int n, const CMatrix& t, const CMatrix& omega) const {
  auto it = evaluation.find(n);
  if (it == evaluation.end()) {
    if (t.rows() == 0 && omega.rows() == 0) return 0;
    throw DegreeMismatch("no pairing in degree " + std::to_string(n));
  }
  if (t.rows() != it->second.rows() || omega.rows() != it->second.cols())
    throw DegreeMismatch("pairing in degree " + std::to_string(n) + " got " +
                         t.shape() + " and " + omega.shape());
  return (t.transpose() * it->second * omega)(0, 0);
}

PairingData dual_complex(const BigradedComplex& a) {
  require_valid(a);
  PairingData pd;
  pd.forms = a;
  pd.currents = dual_of(a);
  const auto [lo, hi] = pd.currents.degree_range();
  for (int n = lo; n <= hi; ++n) pd.evaluation[n] = evaluation_matrix(a, pd.currents, n);
  return pd;
}

PairingData dual_complex(const DolbeaultAlgebra& a) {
  PairingData pd = dual_complex(a.complex);
  pd.dimension = a.dimension;
  if (a.dimension >= 0 && a.integral) pd.delta_X = fundamental_current(a);
  return pd;
}

std::vector<std::string> adjointness_defects(const PairingData& pd) {
  std::vector<std::string> out;
  const auto& a = pd.forms;
  const auto& b = pd.currents;
  const auto [lo, hi] = b.degree_range();
  for (int n = lo; n <= hi + 1; ++n) {
    // <dT, phi> for T in B_n, phi in A_{-(n-1)}; <T, d phi> with d phi in A_{-n}
    const CMatrix e_n = evaluation_matrix(a, b, n), e_m = evaluation_matrix(a, b, n - 1);
    const CMatrix lhs = b.d_matrix(n).transpose() * e_m;
    CMatrix rhs = e_n * a.d_matrix(-n + 1);
    if (n % 2 != 0) rhs = -rhs;
    if (!(lhs == rhs)) out.push_back("adjointness fails in degree " + std::to_string(n));
    if (e_n.rows() != e_n.cols() || rank(e_n) != e_n.rows())
      out.push_back("pairing not perfect in degree " + std::to_string(n));
  }
  return out;
}

std::vector<std::string> double_dual_defects(const BigradedComplex& a) {
  std::vector<std::string> out;
  const BigradedComplex bb = dual_of(dual_of(a));
  if (bb.dims != [&] {
        auto d = a.dims;
        std::erase_if(d, [](const auto& kv) { return kv.second <= 0; });
        return d;
      }())
    out.push_back("dimensions differ");
  if (!out.empty()) return out;
  const auto [lo, hi] = a.degree_range();
  for (int n = lo; n <= hi; ++n) {
    // x |-> (-1)^n x intertwines d_A with the double-dual differential
    const CMatrix s = CMatrix::identity(a.degree_dim(n)) * Scalar(n % 2 == 0 ? 1 : -1);
    const CMatrix s1 =
        CMatrix::identity(a.degree_dim(n - 1)) * Scalar((n - 1) % 2 == 0 ? 1 : -1);
    if (!(bb.d_matrix(n) * s == s1 * a.d_matrix(n)))
      out.push_back("differential in degree " + std::to_string(n));
    if (!(bb.sigma_matrix(n) == a.sigma_matrix(n)))
      out.push_back("conjugation in degree " + std::to_string(n));
  }
  return out;
}

Wedge action_wedge(const DolbeaultAlgebra& a, const BigradedComplex& b) {
  if (!a.wedge) throw NoWedgeDefined("'" + a.complex.name + "' has no product");
  const Wedge& w = *a.wedge;
  if (w.offset != Bidegree{0, 0})
    throw NoWedgeDefined("form product with nonzero offset");
  const BigradedComplex& A = a.complex;
  Wedge act;
  for (const auto& [beta, db] : A.dims) {
    for (const auto& [gamma, dg] : b.dims) {
      const Bidegree tau = beta + gamma;
      const int dt = b.dim(tau);
      if (dt == 0) continue;
      auto it = w.table.find({tau.negated(), beta});
      if (it == w.table.end()) continue;
      const CMatrix& m = it->second;  // rows A(-gamma), cols k * db + i
      CMatrix t(static_cast<std::size_t>(dt), static_cast<std::size_t>(db * dg));
      for (int k = 0; k < dt; ++k)
        for (int i = 0; i < db; ++i)
          for (int j = 0; j < dg; ++j)
            t(k, static_cast<std::size_t>(i * dg + j)) = m(j, static_cast<std::size_t>(k * db + i));
      if (!t.is_zero()) act.table[{beta, gamma}] = t;
    }
  }
  return act;
}

CMatrix wedge_action(const DolbeaultAlgebra& a, const PairingData& pd, int n,
                     const CMatrix& omega, int m, const CMatrix& t) {
  const Wedge act = action_wedge(a, pd.currents);
  return wedge(a.complex, pd.currents, pd.currents, act, n, omega, m, t);
}

CMatrix fundamental_current(const DolbeaultAlgebra& a) {
  if (a.dimension < 0 || !a.integral)
    throw NoFundamentalCurrent("'" + a.complex.name + "' is not compact equidimensional");
  const int d = a.dimension;
  const BigradedComplex b = dual_of(a.complex);
  const Bidegree top{d, d};
  if (b.dim(top) != static_cast<int>(a.integral->cols()))
    throw NoFundamentalCurrent("integral does not match the top bidegree");
  CMatrix v(b.degree_dim(2 * d), 1);
  const Scalar c = i_power(-d);
  for (std::size_t k = 0; k < a.integral->cols(); ++k)
    v(b.offset(top) + k, 0) = c * (*a.integral)(0, k);
  return v;
}

CMatrix current_of_form(const DolbeaultAlgebra& a, const PairingData& pd, int n,
                        const CMatrix& omega) {
  if (!pd.delta_X) throw NoFundamentalCurrent("'" + a.complex.name + "' has no delta_X");
  return wedge_action(a, pd, n, omega, 2 * pd.dimension, *pd.delta_X);
}

CMatrix current_of_form_matrix(const DolbeaultAlgebra& a, const PairingData& pd, int n) {
  if (!pd.delta_X) throw NoFundamentalCurrent("'" + a.complex.name + "' has no delta_X");
  const Wedge act = action_wedge(a, pd.currents);
  const std::size_t cols = a.complex.degree_dim(n);
  CMatrix m(pd.currents.degree_dim(n + 2 * pd.dimension), cols);
  for (std::size_t j = 0; j < cols; ++j) {
    CMatrix e(cols, 1);
    e(j, 0) = 1;
    m.set_block(0, j,
                wedge(a.complex, pd.currents, pd.currents, act, n, e, 2 * pd.dimension,
                      *pd.delta_X));
  }
  return m;
}

BigradedComplex regrade(const BigradedComplex& currents, int d) {
  BigradedComplex c;
  c.name = currents.name + "[regraded]";
  c.variance = Variance::cohomological;
  const Bidegree shift{-d, -d};
  const Scalar s = d % 2 == 0 ? 1 : -1;
  for (const auto& [g, k] : currents.dims) c.dims[g + shift] = k;
  for (const auto& [g, m] : currents.del) c.del[g + shift] = m;
  for (const auto& [g, m] : currents.delbar) c.delbar[g + shift] = m;
  for (const auto& [g, m] : currents.sigma) c.sigma[g + shift] = m * s;
  return c;
}

namespace {

ChainComplex shifted(const ChainComplex& c, int by) {
  ChainComplex s;
  for (const auto& [n, k] : c.dims) s.dims[n - by] = k;
  for (const auto& [n, m] : c.d) s.d[n - by] = m;
  return s;
}

QMatrix coords_or_throw(const DeligneComplex& dc, int n, const QMatrix& host,
                        const char* what) {
  try {
    return dc.coordinates(n, host);
  } catch (const NotASubspace&) {
    throw NotASubspace(std::string(what) + " leaves D_" + std::to_string(n));
  }
}

// [.] from D(A,-p) to D(B,d-p) in degree k (internal for the forms).
QMatrix poincare_block(const DolbeaultAlgebra& a, const PairingData& pd,
                       const DeligneComplex& da, const DeligneComplex& db, int k) {
  const int d = pd.dimension;
  const QMatrix ba = da.basis_at(k);
  if (ba.cols() == 0 || db.basis_at(k + 2 * d).cols() == 0)
    return QMatrix(db.basis_at(k + 2 * d).cols(), ba.cols());
  const int host = da.host_degree(k);
  if (db.host_degree(k + 2 * d) != host + 2 * d)
    throw DegreeMismatch("hosts of [.] do not match in degree " + std::to_string(k));
  const QMatrix m = realify_linear(current_of_form_matrix(a, pd, host));
  return coords_or_throw(db, k + 2 * d, m * ba, "[omega]");
}

}  // namespace

std::vector<PoincareRow> poincare_iso_check(const DolbeaultAlgebra& a, int p_lo,
                                            int p_hi) {
  std::vector<PoincareRow> rows;
  const PairingData pd = dual_complex(a);
  if (!pd.delta_X) throw NoFundamentalCurrent("'" + a.complex.name + "' has no delta_X");
  const int d = pd.dimension;
  for (int p = p_lo; p <= p_hi; ++p) {
    const DeligneComplex da = build_deligne(a.complex, -p);
    const DeligneComplex db = build_deligne(pd.currents, d - p);
    const ChainComplex dbs = shifted(db.chain, 2 * d);
    ChainMap f;
    for (int k = -2 * d - 2; k <= 1; ++k) {
      QMatrix blk = poincare_block(a, pd, da, db, k);
      if (blk.rows() || blk.cols()) f.f[k] = blk;
    }
    const bool chain = chain_map_defects(da.chain, dbs, f).empty();
    for (int n = -1; n <= 2 * d + 1; ++n) {
      PoincareRow r;
      r.n = n;
      r.p = p;
      r.dim_forms = homology(da.chain, -n).dim;
      r.dim_currents = homology(dbs, -n).dim;
      r.rank = induced_rank(da.chain, dbs, f, -n);
      r.chain_map = chain;
      rows.push_back(r);
    }
  }
  return rows;
}

Rational pair_real(const QMatrix& t, const QMatrix& omega) {
  const CMatrix v = complexify_vectors(t).transpose() * complexify_vectors(omega);
  if (!v(0, 0).is_real())
    throw ImaginaryPairing("value " + v(0, 0).to_string());
  return v(0, 0).re();
}

namespace {

Rational pair_hosts(const PairingData& pd, int host_b, const QMatrix& t,
                    const QMatrix& omega) {
  const Scalar v = pd.evaluate(host_b, complexify_vectors(t), complexify_vectors(omega));
  if (!v.is_real()) throw ImaginaryPairing("value " + v.to_string());
  return v.re();
}

int forms_host(int n, int p) {  // host (internal) of D^n(A,p)
  return n >= 2 * p ? -n : -n + 1;
}
int currents_host(int m, int q) {  // host of D_m(B,q)
  return m <= 2 * q ? m : m + 1;
}

// Evaluates rows of T-host vectors against columns of omega-host vectors.
QMatrix pairing_block(const PairingData& pd, int host_b, const QMatrix& ts,
                      const QMatrix& omegas) {
  QMatrix out(ts.cols(), omegas.cols());
  if (ts.cols() == 0 || omegas.cols() == 0) return out;
  auto it = pd.evaluation.find(host_b);
  if (it == pd.evaluation.end()) return out;
  const CMatrix v =
      complexify_vectors(ts).transpose() * it->second * complexify_vectors(omegas);
  for (std::size_t i = 0; i < v.rows(); ++i)
    for (std::size_t j = 0; j < v.cols(); ++j) {
      if (!v(i, j).is_real()) throw ImaginaryPairing("value " + v(i, j).to_string());
      out(i, j) = v(i, j).re();
    }
  return out;
}

struct DeligneCache {
  const BigradedComplex& c;
  std::map<int, DeligneComplex> built;
  const DeligneComplex& at(int p) {
    auto it = built.find(p);
    if (it == built.end()) it = built.emplace(p, build_deligne(c, p)).first;
    return it->second;
  }
};

}  // namespace

Rational deligne_pairing(const PairingData& pd, int n, int p, const QMatrix& omega,
                         const QMatrix& t) {
  const int ha = forms_host(n, p), hb = currents_host(n - 1, p - 1);
  if (ha != -hb)
    throw DegreeMismatch("D^" + std::to_string(n) + " and D_" + std::to_string(n - 1) +
                         " do not pair");
  if (omega.rows() != 2 * pd.forms.degree_dim(ha) ||
      t.rows() != 2 * pd.currents.degree_dim(hb))
    throw DegreeMismatch("host vectors have the wrong size");
  return pair_hosts(pd, hb, t, omega);
}

QMatrix deligne_pairing_matrix(const PairingData& pd, int n, int p) {
  const DeligneComplex da = build_deligne(pd.forms, -p);
  const DeligneComplex db = build_deligne(pd.currents, p - 1);
  return pairing_block(pd, db.host_degree(n - 1), db.basis_at(n - 1), da.basis_at(-n));
}

bool SignReport::ok() const {
  for (const auto& [k, c] : cases)
    if (!c.violations.empty() || c.nonzero == 0) return false;
  return !cases.empty();
}

SignReport check_pairing_differential_signs(const PairingData& pd, int n_lo, int n_hi,
                                            int p_lo, int p_hi) {
  SignReport rep;
  rep.cases["n<=2p-1"].regime = "n<=2p-1";
  rep.cases["n>=2p"].regime = "n>=2p";
  DeligneCache ca{pd.forms, {}}, cb{pd.currents, {}};
  for (int p = p_lo; p <= p_hi; ++p) {
    const DeligneComplex& da = ca.at(-p);
    const DeligneComplex& db = cb.at(p - 1);
    for (int n = n_lo; n <= n_hi; ++n) {
      const bool low = n <= 2 * p - 1;
      SignCase& sc = rep.cases[low ? "n<=2p-1" : "n>=2p"];
      const Rational eps = (low ? n + 1 : n) % 2 == 0 ? 1 : -1;
      // P_{n+1}: D_n(B) x D^{n+1}(A); P_n: D_{n-1}(B) x D^n(A)
      const QMatrix p1 =
          pairing_block(pd, db.host_degree(n), db.basis_at(n), da.basis_at(-n - 1));
      const QMatrix p0 =
          pairing_block(pd, db.host_degree(n - 1), db.basis_at(n - 1), da.basis_at(-n));
      const QMatrix lhs = p1 * da.chain.diff(-n);
      QMatrix rhs = db.chain.diff(n).transpose() * p0;
      rhs *= eps;
      for (std::size_t i = 0; i < lhs.rows(); ++i)
        for (std::size_t j = 0; j < lhs.cols(); ++j) {
          ++sc.checked;
          if (!is_zero(lhs(i, j)) || !is_zero(rhs(i, j))) ++sc.nonzero;
          if (lhs(i, j) != rhs(i, j))
            sc.violations.push_back("n=" + std::to_string(n) + " p=" + std::to_string(p) +
                                    " T" + std::to_string(i) + " w" + std::to_string(j) +
                                    ": " + to_string(lhs(i, j)) + " vs " +
                                    to_string(rhs(i, j)));
        }
    }
  }
  return rep;
}

void require_action_constraints(const ActionTriple& t) {
  if (t.n - t.m + t.l != 1 || t.p - t.q + t.r != 1)
    throw UnsupportedRegime("need n - m + l = 1 and p - q + r = 1, got (n,p,m,q,l,r) = (" +
                            std::to_string(t.n) + "," + std::to_string(t.p) + "," +
                            std::to_string(t.m) + "," + std::to_string(t.q) + "," +
                            std::to_string(t.l) + "," + std::to_string(t.r) + ")");
}

int action_sign(const ActionTriple& t, std::string* regime) {
  require_action_constraints(t);
  const bool mh = t.m > 2 * t.q, lh = t.l >= 2 * t.r;
  auto odd = [](int k) { return k % 2 != 0; };
  if (mh && lh) {
    if (regime) *regime = "m>2q,l>=2r";
    return odd(t.n) ? -1 : 1;
  }
  if (!mh && !lh) {
    if (regime) *regime = "m<=2q,l<2r";
    return 1;
  }
  if (mh) {
    if (regime) *regime = "m>2q,l<2r";
    return odd(t.m - 1) ? -1 : 1;
  }
  if (regime) *regime = "m<=2q,l>=2r";
  return odd(t.l) ? -1 : 1;
}

QMatrix deligne_action(const DolbeaultAlgebra& a, const PairingData& pd,
                       const Wedge& act, int n, int p, const QMatrix& omega, int m,
                       int q, const QMatrix& t) {
  const ProductSpaces s{a.complex, pd.currents, pd.currents, act};
  return deligne_product(s, -n, -p, omega, m, q, t);
}

SignReport check_pairing_action_signs(const DolbeaultAlgebra& a, const PairingData& pd,
                                      int lo, int hi) {
  SignReport rep;
  for (const char* r : {"m>2q,l>=2r", "m<=2q,l<2r", "m>2q,l<2r", "m<=2q,l>=2r"})
    rep.cases[r].regime = r;
  if (!a.wedge) throw NoWedgeDefined("'" + a.complex.name + "' has no product");
  const Wedge act = action_wedge(a, pd.currents);
  const ProductSpaces forms{a.complex, a.complex, a.complex, *a.wedge};
  DeligneCache ca{pd.forms, {}}, cb{pd.currents, {}};
  for (int n = lo; n <= hi; ++n)
    for (int p = lo; p <= hi; ++p)
      for (int l = lo; l <= hi; ++l)
        for (int r = lo; r <= hi; ++r) {
          const ActionTriple tr{n, p, n + l - 1, p + r - 1, l, r};
          std::string regime;
          const int sign = action_sign(tr, &regime);
          SignCase& sc = rep.cases[regime];
          const QMatrix w = ca.at(-p).basis_at(-n);
          const QMatrix ts = cb.at(tr.q).basis_at(tr.m);
          const QMatrix es = ca.at(-r).basis_at(-l);
          if (w.cols() == 0 || ts.cols() == 0 || es.cols() == 0) continue;
          const DeligneComplex& target_b = cb.at(tr.q - p);
          const DeligneComplex& target_a = ca.at(-(r + p));
          for (std::size_t i = 0; i < w.cols(); ++i) {
            const QMatrix wi = w.col(i);
            // (w . T)(eta) for all T, eta
            QMatrix acted(2 * pd.currents.degree_dim(target_b.host_degree(tr.m - n)), 0);
            for (std::size_t j = 0; j < ts.cols(); ++j) {
              const QMatrix v = deligne_action(a, pd, act, n, p, wi, tr.m, tr.q, ts.col(j));
              if (!target_b.contains(tr.m - n, v))
                sc.violations.push_back("omega.T outside D for (n,p,m,q)=(" +
                                        std::to_string(n) + "," + std::to_string(p) + "," +
                                        std::to_string(tr.m) + "," + std::to_string(tr.q) +
                                        ")");
              acted = hstack(acted, v);
            }
            const QMatrix lhs =
                pairing_block(pd, target_b.host_degree(tr.m - n), acted, es);  // T x eta
            QMatrix prods(2 * a.complex.degree_dim(target_a.host_degree(-(l + n))), 0);
            for (std::size_t k = 0; k < es.cols(); ++k) {
              const QMatrix v = deligne_product(forms, -l, -r, es.col(k), -n, -p, wi);
              if (!target_a.contains(-(l + n), v))
                sc.violations.push_back("eta.omega outside D");
              prods = hstack(prods, v);
            }
            QMatrix rhs = pairing_block(pd, cb.at(tr.q).host_degree(tr.m), ts, prods);
            rhs *= Rational(sign);
            for (std::size_t j = 0; j < lhs.rows(); ++j)
              for (std::size_t k = 0; k < lhs.cols(); ++k) {
                ++sc.checked;
                if (!is_zero(lhs(j, k)) || !is_zero(rhs(j, k))) ++sc.nonzero;
                if (lhs(j, k) != rhs(j, k))
                  sc.violations.push_back(
                      "(n,p,m,q,l,r)=(" + std::to_string(n) + "," + std::to_string(p) + "," +
                      std::to_string(tr.m) + "," + std::to_string(tr.q) + "," +
                      std::to_string(l) + "," + std::to_string(r) + "): " +
                      to_string(lhs(j, k)) + " vs " + to_string(rhs(j, k)));
              }
          }
        }
  return rep;
}

GramReport exceptional_duality(const DolbeaultAlgebra& a, int n, int p) {
  GramReport g;
  const int d = a.dimension;
  g.n = n;
  g.p = p;
  g.n2 = 2 * d - n + 1;
  g.p2 = d - p + 1;
  const PairingData pd = dual_complex(a);
  if (!pd.delta_X) throw NoFundamentalCurrent("'" + a.complex.name + "' has no delta_X");
  const DeligneComplex d1 = build_deligne(a.complex, -p);
  const DeligneComplex d2 = build_deligne(a.complex, -g.p2);
  const auto h1 = homology(d1.chain, -n);
  const auto h2 = homology(d2.chain, -g.n2);
  g.dim_left = h1.dim;
  g.dim_right = h2.dim;
  g.gram = QMatrix(h1.dim, h2.dim);
  if (h1.dim == 0 || h2.dim == 0) {
    g.rank = 0;
    return g;
  }
  const QMatrix omegas = d1.basis_at(-n) * h1.reps;
  const int host2 = d2.host_degree(-g.n2);
  const QMatrix currents =
      realify_linear(current_of_form_matrix(a, pd, host2)) * (d2.basis_at(-g.n2) * h2.reps);
  const int hb = host2 + 2 * d;
  if (hb != -d1.host_degree(-n)) throw DegreeMismatch("exceptional pairing hosts");
  g.gram = pairing_block(pd, hb, currents, omegas).transpose();
  g.rank = rank(g.gram);
  return g;
}

}  // namespace fdeligne
