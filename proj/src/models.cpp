#include "fdeligne/models.hpp"

#include <algorithm>

namespace fdeligne {

std::string to_string(ModelKind k) {
  switch (k) {
    case ModelKind::kahler:
      return "kahler";
    case ModelKind::jet:
      return "jet";
    case ModelKind::dual_jet:
      return "dual-jet";
    default:
      return "synthetic";
  }
}

namespace {

CMatrix one() { return CMatrix{{Scalar(1)}}; }

ModelDescriptor projective_space(int n) {
  ModelDescriptor m;
  m.name = n == 0 ? "point" : "P" + std::to_string(n);
  m.kind = ModelKind::kahler;
  m.params["d"] = n;
  m.role = "X";
  auto& a = m.algebra;
  a.complex.name = m.name;
  a.complex.variance = Variance::cohomological;
  a.dimension = n;
  Wedge w;
  for (int k = 0; k <= n; ++k) {
    a.complex.dims[{-k, -k}] = 1;
    a.complex.sigma[{-k, -k}] = one();
    for (int l = 0; k + l <= n; ++l) w.table[{{-k, -k}, {-l, -l}}] = one();
  }
  a.wedge = w;
  a.integral = one();
  return m;
}

ModelDescriptor elliptic_curve() {
  ModelDescriptor m;
  m.name = "elliptic";
  m.kind = ModelKind::kahler;
  m.params["d"] = 1;
  m.role = "X";
  auto& a = m.algebra;
  a.complex.name = m.name;
  a.complex.variance = Variance::cohomological;
  a.dimension = 1;
  // basis 1, dz, dzbar, v = i dz ^ dzbar
  const Bidegree o{0, 0}, z{-1, 0}, zb{0, -1}, v{-1, -1};
  for (auto b : {o, z, zb, v}) a.complex.dims[b] = 1;
  a.complex.sigma[o] = one();
  a.complex.sigma[z] = one();
  a.complex.sigma[zb] = one();
  a.complex.sigma[v] = one();
  Wedge w;
  for (auto b : {o, z, zb, v}) {
    w.table[{o, b}] = one();
    if (b != o) w.table[{b, o}] = one();
  }
  w.table[{z, zb}] = CMatrix{{-Scalar::i()}};
  w.table[{zb, z}] = CMatrix{{Scalar::i()}};
  a.wedge = w;
  a.integral = one();
  return m;
}

int jet_dim(int N, int f) {
  const int M = N - f;
  return M < 0 ? 0 : (M + 1) * (M + 2) / 2;
}

BigradedComplex jet_complex(int N) {
  BigradedComplex c;
  c.name = "jet_model(" + std::to_string(N) + ")";
  c.variance = Variance::cohomological;
  for (int e1 = 0; e1 <= 1; ++e1)
    for (int e2 = 0; e2 <= 1; ++e2)
      if (jet_dim(N, e1 + e2) > 0) c.dims[{-e1, -e2}] = jet_dim(N, e1 + e2);
  auto each = [&](int f, auto&& fn) {
    for (int s = 0; s <= N - f; ++s)
      for (int a = 0; a <= s; ++a) fn(a, s - a);
  };
  auto sz = [](int k) { return static_cast<std::size_t>(k); };
  const int d0 = jet_dim(N, 0), d1 = jet_dim(N, 1), d2 = jet_dim(N, 2);
  if (d0 > 0 && d1 > 0) {
    CMatrix del(sz(d1), sz(d0)), dbar(sz(d1), sz(d0));
    each(0, [&](int a, int b) {
      const int j = jet_index(N, 0, 0, a, b);
      if (a > 0) del(sz(jet_index(N, 1, 0, a - 1, b)), sz(j)) = a;
      if (b > 0) dbar(sz(jet_index(N, 0, 1, a, b - 1)), sz(j)) = b;
    });
    c.del[{0, 0}] = del;
    c.delbar[{0, 0}] = dbar;
  }
  if (d1 > 0 && d2 > 0) {
    CMatrix del(sz(d2), sz(d1)), dbar(sz(d2), sz(d1));
    each(1, [&](int a, int b) {
      // d(g dtbar) = g_t dt ^ dtbar ; dbar(f dt) = -f_tbar dt ^ dtbar
      if (a > 0) del(sz(jet_index(N, 1, 1, a - 1, b)), sz(jet_index(N, 0, 1, a, b))) = a;
      if (b > 0) dbar(sz(jet_index(N, 1, 1, a, b - 1)), sz(jet_index(N, 1, 0, a, b))) = -b;
    });
    c.del[{0, -1}] = del;
    c.delbar[{-1, 0}] = dbar;
  }
  for (int e1 = 0; e1 <= 1; ++e1)
    for (int e2 = 0; e2 <= 1; ++e2) {
      const int f = e1 + e2, dim = jet_dim(N, f);
      if (dim == 0) continue;
      CMatrix s(sz(dim), sz(dim));
      const Scalar sign = (e1 == 1 && e2 == 1) ? -1 : 1;
      each(f, [&](int a, int b) {
        s(sz(jet_index(N, e2, e1, b, a)), sz(jet_index(N, e1, e2, a, b))) = sign;
      });
      c.sigma[{-e1, -e2}] = s;
    }
  return c;
}

Wedge jet_wedge(int N) {
  Wedge w;
  auto sz = [](int k) { return static_cast<std::size_t>(k); };
  for (int a1 = 0; a1 <= 1; ++a1)
    for (int b1 = 0; b1 <= 1; ++b1)
      for (int a2 = 0; a2 <= 1 - a1; ++a2)
        for (int b2 = 0; b2 <= 1 - b1; ++b2) {
          const int f1 = a1 + b1, f2 = a2 + b2, ft = f1 + f2;
          const int d1 = jet_dim(N, f1), d2 = jet_dim(N, f2), dt = jet_dim(N, ft);
          if (d1 == 0 || d2 == 0 || dt == 0) continue;
          const Scalar sign = (b1 == 1 && a2 == 1) ? -1 : 1;  // dtbar ^ dt
          CMatrix m(sz(dt), sz(d1 * d2));
          for (int s1 = 0; s1 <= N - f1; ++s1)
            for (int x1 = 0; x1 <= s1; ++x1)
              for (int s2 = 0; s2 <= N - f2; ++s2)
                for (int x2 = 0; x2 <= s2; ++x2) {
                  if (s1 + s2 + ft > N) continue;
                  const int i = jet_index(N, a1, b1, x1, s1 - x1);
                  const int j = jet_index(N, a2, b2, x2, s2 - x2);
                  const int t = jet_index(N, a1 + a2, b1 + b2, x1 + x2, s1 + s2 - x1 - x2);
                  m(sz(t), sz(i * d2 + j)) = sign;
                }
          w.table[{{-a1, -b1}, {-a2, -b2}}] = m;
        }
  return w;
}

// Coordinates kept per bidegree; builds the complex on those coordinates,
// with operators P M E. Valid when the kept coordinates span a subcomplex
// (sub) or when the dropped ones do (quotient).
BigradedComplex select(const BigradedComplex& a,
                       const std::map<Bidegree, std::vector<std::size_t>>& keep,
                       const std::string& name, std::map<Bidegree, CMatrix>& incl) {
  BigradedComplex c;
  c.name = name;
  c.variance = a.variance;
  for (const auto& [b, idx] : keep) {
    if (idx.empty()) continue;
    c.dims[b] = static_cast<int>(idx.size());
    incl[b] = CMatrix::identity(static_cast<std::size_t>(a.dim(b))).cols_at(idx);
  }
  auto restrict = [&](const std::map<Bidegree, CMatrix>& ops, Bidegree (*tgt)(Bidegree),
                      std::map<Bidegree, CMatrix>& out) {
    for (const auto& [b, m] : ops) {
      const Bidegree t = tgt(b);
      if (c.dim(b) == 0 || c.dim(t) == 0) continue;
      CMatrix r = incl.at(t).transpose() * m * incl.at(b);
      if (!r.is_zero()) out[b] = r;
    }
  };
  restrict(a.del, [](Bidegree b) { return Bidegree{b.p - 1, b.q}; }, c.del);
  restrict(a.delbar, [](Bidegree b) { return Bidegree{b.p, b.q - 1}; }, c.delbar);
  restrict(a.sigma, [](Bidegree b) { return b.swapped(); }, c.sigma);
  return c;
}

}  // namespace

int jet_index(int N, int eps1, int eps2, int a, int b) {
  const int s = a + b;
  if (a < 0 || b < 0 || s > N - eps1 - eps2) return -1;
  return s * (s + 1) / 2 + a;
}

std::vector<std::string> kahler_model_names() {
  return {"point", "P1", "P2", "P3", "elliptic"};
}

ModelDescriptor kahler_model(const std::string& name) {
  if (name == "point") return projective_space(0);
  if (name == "elliptic") return elliptic_curve();
  if (name.size() == 2 && name[0] == 'P' && name[1] >= '1' && name[1] <= '3')
    return projective_space(name[1] - '0');
  throw UnknownModel("'" + name + "'");
}

ModelDescriptor jet_model(int N) {
  if (N < 1) throw BadOrder("jet order N = " + std::to_string(N) + " must be >= 1");
  ModelDescriptor m;
  m.name = "jet:" + std::to_string(N);
  m.kind = ModelKind::jet;
  m.params["N"] = N;
  m.role = "Y (infinitesimal neighbourhood of a point)";
  m.algebra.complex = jet_complex(N);
  m.algebra.wedge = jet_wedge(N);
  return m;
}

ModelDescriptor model_by_name(const std::string& name) {
  auto order = [&](std::size_t pos) {
    try {
      std::size_t used = 0;
      const int n = std::stoi(name.substr(pos), &used);
      if (used != name.size() - pos) throw UnknownModel("'" + name + "'");
      return n;
    } catch (const std::logic_error&) {
      throw UnknownModel("'" + name + "'");
    }
  };
  if (name.rfind("jet:", 0) == 0) return jet_model(order(4));
  if (name.rfind("dual-jet:", 0) == 0) {
    ModelDescriptor j = jet_model(order(9));
    ModelDescriptor m;
    m.name = name;
    m.kind = ModelKind::dual_jet;
    m.params = j.params;
    m.role = "tempered currents at a point";
    m.algebra.complex = dual_of(j.algebra.complex);
    return m;
  }
  return kahler_model(name);
}

std::vector<std::string> ses_defects(const SESTriple& s) {
  std::vector<std::string> out;
  std::vector<Bidegree> all;
  for (const auto* c : {&s.sub, &s.mid, &s.quo})
    for (const auto& [b, k] : c->dims)
      if (k > 0) all.push_back(b);
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  for (const auto& b : all) {
    const CMatrix i = s.inj.block(s.sub, s.mid, b), j = s.surj.block(s.mid, s.quo, b);
    const std::string at = " at " + to_string(b);
    if (rank(i) != static_cast<std::size_t>(s.sub.dim(b)))
      out.push_back("injection not injective" + at);
    if (rank(j) != static_cast<std::size_t>(s.quo.dim(b)))
      out.push_back("surjection not surjective" + at);
    if (!(j * i).is_zero()) out.push_back("composition nonzero" + at);
    if (s.sub.dim(b) + s.quo.dim(b) != s.mid.dim(b))
      out.push_back("dimensions do not add" + at);
  }
  for (const auto& v : validate_map(s.sub, s.mid, s.inj))
    out.push_back("injection: " + v.kind + " " + v.where);
  for (const auto& v : validate_map(s.mid, s.quo, s.surj))
    out.push_back("surjection: " + v.kind + " " + v.where);
  return out;
}

SESTriple ses_jet(int N, int k) {
  if (N < 1) throw BadOrder("jet order N = " + std::to_string(N) + " must be >= 1");
  if (k < 1 || k > N)
    throw BadOrder("inner order k = " + std::to_string(k) + " outside [1, " +
                   std::to_string(N) + "]");
  SESTriple s;
  s.mid = jet_complex(N);
  std::map<Bidegree, std::vector<std::size_t>> high, low;
  for (const auto& [b, dim] : s.mid.dims) {
    const int f = -b.p - b.q;
    for (int t = 0; t <= N - f; ++t)
      for (int a = 0; a <= t; ++a) {
        const auto idx = static_cast<std::size_t>(jet_index(N, -b.p, -b.q, a, t - a));
        (t + f >= k ? high : low)[b].push_back(idx);
      }
  }
  std::map<Bidegree, CMatrix> incl_sub, incl_quo;
  s.sub = select(s.mid, high, "flat(" + std::to_string(k) + ")" + s.mid.name, incl_sub);
  s.quo = select(s.mid, low, "jet_model(" + std::to_string(k - 1) + ")", incl_quo);
  s.inj.blocks = incl_sub;
  for (const auto& [b, m] : incl_quo) s.surj.blocks[b] = m.transpose();
  return s;
}

SESTriple dualize_ses(const SESTriple& s) {
  SESTriple d;
  d.sub = dual_of(s.quo);
  d.mid = dual_of(s.mid);
  d.quo = dual_of(s.sub);
  for (const auto& [b, m] : s.surj.blocks) d.inj.blocks[b.negated()] = m.transpose();
  for (const auto& [b, m] : s.inj.blocks) d.surj.blocks[b.negated()] = m.transpose();
  return d;
}


DeligneSES deligne_ses(const SESTriple& s, int p) {
  DeligneSES d{build_deligne(s.sub, p), build_deligne(s.mid, p), build_deligne(s.quo, p),
               {}, {}};
  d.inj = deligne_chain_map(s.sub, s.mid, s.inj, d.sub, d.mid);
  d.surj = deligne_chain_map(s.mid, s.quo, s.surj, d.mid, d.quo);
  return d;
}

long LESReport::euler() const {
  long e = 0;
  for (std::size_t k = 0; k < nodes.size(); ++k)
    e += (k % 2 == 0 ? 1 : -1) * static_cast<long>(nodes[k].dim);
  return e;
}

bool LESReport::ok() const {
  if (!defects.empty()) return false;
  for (const auto& n : nodes)
    if (!n.exact()) return false;
  return euler() == 0;
}

LESReport les_check(const SESTriple& s, int p) {
  LESReport rep;
  rep.p = p;
  rep.defects = ses_defects(s);
  if (!rep.defects.empty()) return rep;
  const DeligneSES d = deligne_ses(s, p);
  for (const auto& x : fdeligne::ses_defects(d.sub.chain, d.mid.chain, d.quo.chain, d.inj,
                                             d.surj))
    rep.defects.push_back("Deligne level: " + x);
  if (!rep.defects.empty()) return rep;
  int lo = 0, hi = -1;
  bool any = false;
  for (const auto* c : {&d.sub.chain, &d.mid.chain, &d.quo.chain}) {
    auto [l, h] = c->range();
    if (h < l) continue;
    lo = any ? std::min(lo, l) : l;
    hi = any ? std::max(hi, h) : h;
    any = true;
  }
  if (!any) return rep;
  // H_n(sub) -> H_n(mid) -> H_n(quo) -> H_{n-1}(sub) -> ...
  for (int n = hi + 1; n >= lo - 1; --n) {
    const std::size_t ri = induced_rank(d.sub.chain, d.mid.chain, d.inj, n);
    const std::size_t rj = induced_rank(d.mid.chain, d.quo.chain, d.surj, n);
    const std::size_t rc_in =
        connecting_rank(d.sub.chain, d.mid.chain, d.quo.chain, d.inj, d.surj, n + 1);
    const std::size_t rc_out =
        connecting_rank(d.sub.chain, d.mid.chain, d.quo.chain, d.inj, d.surj, n);
    const std::string deg = std::to_string(n);
    rep.nodes.push_back({"H_" + deg + "(sub)", homology(d.sub.chain, n).dim, rc_in, ri});
    rep.nodes.push_back({"H_" + deg + "(mid)", homology(d.mid.chain, n).dim, ri, rj});
    rep.nodes.push_back({"H_" + deg + "(quo)", homology(d.quo.chain, n).dim, rj, rc_out});
  }
  return rep;
}

ChainComplex formal_point_complex(int e, int N) {
  // cohomological degree k is stored at chain degree -k
  ChainComplex c;
  const int top = std::min(e, 1);  // one variable: no forms above degree 1
  c.dims[0] = 1;
  c.dims[-1] = 2 * static_cast<std::size_t>(N + 1);
  if (top >= 1 && N >= 1) c.dims[-2] = 2 * static_cast<std::size_t>(N);
  // R(e+1) -> Omega^0: 1 |-> i^{e+1}
  CMatrix inc(static_cast<std::size_t>(N + 1), 1);
  inc(0, 0) = i_power(e + 1);
  c.d[0] = realify_vectors(inc);
  if (c.dim(-2)) {
    CMatrix dt(static_cast<std::size_t>(N), static_cast<std::size_t>(N + 1));
    for (int a = 1; a <= N; ++a) dt(static_cast<std::size_t>(a - 1), static_cast<std::size_t>(a)) = a;
    c.d[-1] = realify_linear(dt);
  }
  return c;
}

std::vector<PointComplexRow> formal_deligne_point_complex(int e, int N) {
  std::vector<PointComplexRow> rows;
  const ChainComplex f0 = formal_point_complex(e, N), f1 = formal_point_complex(e, N + 1);
  const DeligneComplex d0 = build_deligne(jet_model(N).algebra.complex, -(e + 1));
  const DeligneComplex d1 = build_deligne(jet_model(N + 1).algebra.complex, -(e + 1));
  for (int n = 0; n <= 3; ++n) {
    PointComplexRow r;
    r.degree = n;
    r.formal = homology(f0, -n).dim;
    r.deligne = homology(d0.chain, -n).dim;
    r.saturated = r.formal == homology(f1, -n).dim && r.deligne == homology(d1.chain, -n).dim;
    rows.push_back(r);
  }
  return rows;
}

std::vector<SemipurityRow> semipurity_scan(int e_lo, int e_hi, int N_lo, int N_hi,
                                           int n_lo, int n_hi) {
  std::vector<SemipurityRow> rows;
  const int p = 0;
  for (int N = N_lo; N <= N_hi; ++N) {
    const BigradedComplex b = dual_of(jet_model(N).algebra.complex);
    for (int e = e_lo; e <= e_hi; ++e) {
      const DeligneComplex dc = build_deligne(b, e);
      for (int n = n_lo; n <= n_hi; ++n) {
        SemipurityRow r;
        r.N = N;
        r.e = e;
        r.n = n;
        r.dim = homology(dc.chain, n).dim;
        r.bound = std::max(e + p, 2 * p - 1);
        rows.push_back(r);
      }
    }
  }
  return rows;
}

}  // namespace fdeligne
