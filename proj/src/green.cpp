#include "fdeligne/green.hpp"

#include "fdeligne/models.hpp"

namespace fdeligne {

namespace {

std::size_t sz(int k) { return static_cast<std::size_t>(k); }

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < b.rows(); ++j)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + j, k * b.cols() + l) = a(i, k) * b(j, l);
    }
  return out;
}

QMatrix coords_or_throw(const QMatrix& basis, const QMatrix& v, const std::string& what) {
  if (v.cols() == 0) return QMatrix(basis.cols(), 0);
  if (basis.cols() == 0) {
    if (!v.is_zero()) throw NotASubspace(what);
    return QMatrix(0, v.cols());
  }
  auto x = solve(basis, v);
  if (!x) throw NotASubspace(what);
  return *x;
}

void require_column(const QMatrix& v, std::size_t rows, const std::string& what) {
  if (v.rows() != rows || v.cols() != 1)
    throw DegreeMismatch(what + " has shape " + v.shape() + ", expected " +
                         std::to_string(rows) + "x1");
}

HomologyClass class_in(const ChainComplex& c, int n, const QMatrix& v) {
  HomologyClass out;
  const HomologyGroup h = homology(c, n);
  out.group_dim = h.dim;
  if (c.dim(n) == 0) {
    out.coords = QMatrix(h.dim, 1);
    return out;
  }
  if (!c.diff(n).is_zero() && !(c.diff(n) * v).is_zero())
    throw NotASubspace("element of degree " + std::to_string(n) + " is not closed");
  const QMatrix all = hstack(h.reps, h.boundaries);
  const QMatrix x = coords_or_throw(all, v, "cycle outside Z");
  out.coords = x.block(0, 0, h.dim, 1);
  return out;
}

ChainComplex direct_sum(const ChainComplex& a, const ChainComplex& b) {
  ChainComplex s;
  for (const auto& [n, k] : a.dims) s.dims[n] += k;
  for (const auto& [n, k] : b.dims) s.dims[n] += k;
  for (const auto& [n, k] : s.dims) {
    if (s.dim(n - 1) == 0) continue;
    s.d[n] = block_diag(a.diff(n), b.diff(n));
  }
  return s;
}

// pi_{p+1} F_{k,k} on the host of a high degree, pi_p F_{p,p} on a low one
QMatrix deligne_projection(const DeligneComplex& dc, int n) {
  const BigradedComplex& a = dc.source;
  const int host = dc.host_degree(n);
  if (dc.low(n)) return a.real_pi(host, dc.p) * a.real_filtration(host, dc.p, dc.p);
  return a.real_pi(host, dc.p + 1) * a.real_filtration(host, n - dc.p, n - dc.p);
}

}  // namespace

QMatrix Complement::real_project(const BigradedComplex& big, int n) const {
  return BigradedMap{project}.real_degree_matrix(big, complex, n);
}

QMatrix Complement::real_lift(const BigradedComplex& big, int n) const {
  return BigradedMap{lift}.real_degree_matrix(complex, big, n);
}

Complement complement_of(const BigradedComplex& b, const Ideal& support,
                         const std::string& name) {
  require_valid(b);
  Complement u;
  u.complex.name = name;
  u.complex.variance = b.variance;
  std::map<Bidegree, CMatrix> ideal;
  for (const auto& [bd, dim] : b.dims) {
    auto it = support.find(bd);
    CMatrix span(sz(dim), 0);
    if (it != support.end() && it->second.cols() > 0) {
      if (it->second.rows() != sz(dim))
        throw DimensionMismatch("support block " + to_string(bd) + " has " +
                                it->second.shape());
      span = image_basis(it->second);
    }
    ideal[bd] = span;
    const std::size_t k = span.cols();
    if (k == sz(dim)) continue;
    const CMatrix l =
        quotient(Subspace<Scalar>::whole(sz(dim)), Subspace<Scalar>(sz(dim), span)).basis;
    const CMatrix inv = *inverse(hstack(l, span));
    u.complex.dims[bd] = static_cast<int>(l.cols());
    u.lift[bd] = l;
    u.project[bd] = inv.block(0, 0, l.cols(), sz(dim));
  }
  auto pr = [&](Bidegree t) {
    auto it = u.project.find(t);
    return it == u.project.end() ? CMatrix(0, sz(b.dim(t))) : it->second;
  };
  auto stable = [&](const CMatrix& image, Bidegree t, const char* op, Bidegree src) {
    if (image.cols() && !(pr(t) * image).is_zero())
      throw InvalidComplex("support is not stable under " + std::string(op) + " at " +
                           to_string(src));
  };
  for (const auto& [bd, span] : ideal) {
    const Bidegree l{bd.p - 1, bd.q}, r{bd.p, bd.q - 1};
    if (b.dim(l)) stable(b.del_block(bd) * span, l, "del", bd);
    if (b.dim(r)) stable(b.delbar_block(bd) * span, r, "delbar", bd);
    stable(b.sigma_block(bd) * span.conjugate(), bd.swapped(), "sigma", bd);
  }
  for (const auto& [bd, l] : u.lift) {
    const Bidegree tl{bd.p - 1, bd.q}, tr{bd.p, bd.q - 1};
    if (u.complex.dim(tl)) {
      CMatrix m = u.project.at(tl) * b.del_block(bd) * l;
      if (!m.is_zero()) u.complex.del[bd] = m;
    }
    if (u.complex.dim(tr)) {
      CMatrix m = u.project.at(tr) * b.delbar_block(bd) * l;
      if (!m.is_zero()) u.complex.delbar[bd] = m;
    }
    const Bidegree sw = bd.swapped();
    if (u.complex.dim(sw))
      u.complex.sigma[bd] = u.project.at(sw) * b.sigma_block(bd) * l.conjugate();
  }
  require_valid(u.complex);
  return u;
}

std::vector<int> DiagramContext::defects() const {
  return chain_map_defects(ambient.chain, complement, restriction);
}

DiagramContext diagram_context(const BigradedComplex& b, const Complement& u, int p,
                               const std::string& name) {
  DiagramContext ctx;
  ctx.name = name;
  ctx.p = p;
  ctx.ambient = build_deligne(b, p);
  const DeligneComplex du = build_deligne(u.complex, p);
  ctx.complement = du.chain;
  ctx.restriction = deligne_chain_map(b, u.complex, BigradedMap{u.project}, ctx.ambient, du);
  ctx.supports.push_back(u.complex.name);
  return ctx;
}

std::vector<std::string> truncated_defects(const DiagramContext& ctx,
                                           const TruncatedClass& tc) {
  if (tc.p != ctx.p)
    throw DegreeMismatch("class of weight " + std::to_string(tc.p) + " in context of weight " +
                         std::to_string(ctx.p));
  const int n = 2 * ctx.p;
  require_column(tc.omega, ctx.ambient.chain.dim(n), "omega");
  require_column(tc.g, ctx.complement.dim(n + 1), "g");
  std::vector<std::string> out;
  if (ctx.ambient.chain.dim(n - 1) && !(ctx.ambient.chain.diff(n) * tc.omega).is_zero())
    out.push_back("omega is not closed");
  const QMatrix res = ctx.restriction.at(ctx.ambient.chain, ctx.complement, n) * tc.omega;
  QMatrix dg(ctx.complement.dim(n), 1);
  if (ctx.complement.dim(n) && ctx.complement.dim(n + 1)) dg = ctx.complement.diff(n + 1) * tc.g;
  if (!(res - dg).is_zero()) out.push_back("d g differs from the restriction of omega");
  return out;
}

namespace {

ChainComplex restriction_cone(const DiagramContext& ctx) {
  return cone(ctx.ambient.chain, ctx.complement, ctx.restriction);
}

}  // namespace

HomologyClass class_map(const DiagramContext& ctx, const TruncatedClass& tc) {
  truncated_defects(ctx, tc);  // shape checks
  const int n = 2 * ctx.p;
  return class_in(restriction_cone(ctx), n, vstack(tc.omega, tc.g));
}

GreenVerdict is_green_for(const DiagramContext& ctx, const TruncatedClass& tc,
                          const QMatrix& delta) {
  truncated_defects(ctx, tc);
  const int n = 2 * ctx.p;
  require_column(delta, ctx.ambient.chain.dim(n), "delta");
  if (ctx.ambient.chain.dim(n - 1) && !(ctx.ambient.chain.diff(n) * delta).is_zero())
    throw NotASubspace("delta is not closed");
  if (!(ctx.restriction.at(ctx.ambient.chain, ctx.complement, n) * delta).is_zero())
    throw NotASubspace("delta does not vanish on the complement");
  const ChainComplex c = restriction_cone(ctx);
  const QMatrix v = vstack(tc.omega - delta, tc.g);
  GreenVerdict out;
  const std::size_t gx = ctx.ambient.chain.dim(n + 1), gy = ctx.complement.dim(n + 2);
  if (v.is_zero()) {
    out.green = true;
    out.gamma = QMatrix(gx, 1);
    out.beta = QMatrix(gy, 1);
  } else if (c.dim(n + 1)) {
    if (auto x = solve(c.diff(n + 1), v)) {
      out.green = true;
      out.gamma = x->block(0, 0, gx, 1);
      out.beta = x->block(gx, 0, gy, 1);
    }
  }
  out.obstruction = class_in(c, n, v);
  return out;
}

TruncatedClass a_map(const DiagramContext& ctx, const QMatrix& eta) {
  const int n = 2 * ctx.p;
  const ChainComplex& x = ctx.ambient.chain;
  require_column(eta, x.dim(n + 1), "eta");
  TruncatedClass tc;
  tc.p = ctx.p;
  tc.omega = x.dim(n) ? x.diff(n + 1) * eta : QMatrix(0, 1);
  tc.g = ctx.restriction.at(x, ctx.complement, n + 1) * eta;
  return tc;
}

QMatrix omega_map(const TruncatedClass& tc) { return tc.omega; }

HomologyClass h_map(const DiagramContext& ctx, const QMatrix& alpha) {
  const int n = 2 * ctx.p;
  require_column(alpha, ctx.ambient.chain.dim(n), "alpha");
  return class_in(ctx.ambient.chain, n, alpha);
}

CurrentAlgebra current_algebra(const DolbeaultAlgebra& a) {
  if (!a.wedge) throw NoWedgeDefined("model " + a.complex.name + " carries no product");
  CurrentAlgebra ca;
  ca.forms = a;
  ca.pd = dual_complex(a);
  if (!ca.pd.delta_X) throw NoFundamentalCurrent("model " + a.complex.name);
  ca.d = a.dimension;
  const BigradedComplex& f = a.complex;
  const BigradedComplex& b = ca.pd.currents;
  const Bidegree shift{ca.d, ca.d};
  // [.] on each bidegree block, inverted
  std::map<Bidegree, CMatrix> cls, inv;
  for (const auto& [bd, dim] : f.dims) {
    const int n = bd.total();
    const CMatrix m = current_of_form_matrix(a, ca.pd, n);
    const Bidegree t = bd + shift;
    const CMatrix blk = m.block(b.offset(t), f.offset(bd), sz(b.dim(t)), sz(dim));
    auto i = inverse(blk);
    if (!i) throw NoWedgeDefined("[.] is not invertible on " + to_string(bd));
    cls[bd] = blk;
    inv[bd] = *i;
  }
  ca.product.offset = Bidegree{-ca.d, -ca.d};
  for (const auto& [key, tbl] : a.wedge->table) {
    const auto [b1, b2] = key;
    const Bidegree t = b1 + b2 + a.wedge->offset;
    if (!cls.count(t) || !cls.count(b1) || !cls.count(b2)) continue;
    ca.product.table[{b1 + shift, b2 + shift}] = cls.at(t) * tbl * kron(inv.at(b1), inv.at(b2));
  }
  return ca;
}

namespace {

CMatrix product_block(const CMatrix& table, const CMatrix& x, const CMatrix& y) {
  return table * kron(x, y);
}

}  // namespace

Ideal ideal_generated(const CurrentAlgebra& ca,
                      const std::vector<std::pair<Bidegree, CMatrix>>& gens) {
  const BigradedComplex& b = ca.currents();
  Ideal span;
  auto add = [&](Bidegree bd, const CMatrix& v) {
    if (v.cols() == 0 || v.is_zero() || b.dim(bd) == 0) return false;
    auto it = span.find(bd);
    if (it == span.end()) {
      span[bd] = image_basis(v);
      return true;
    }
    const CMatrix grown = image_basis(hstack(it->second, v));
    if (grown.cols() == it->second.cols()) return false;
    it->second = grown;
    return true;
  };
  for (const auto& [bd, v] : gens) {
    if (v.rows() != sz(b.dim(bd)))
      throw DimensionMismatch("generator at " + to_string(bd) + " has " + v.shape());
    add(bd, v);
  }
  bool grew = true;
  while (grew) {
    grew = false;
    const Ideal cur = span;
    for (const auto& [bd, s] : cur) {
      grew |= add({bd.p - 1, bd.q}, b.del_block(bd) * s);
      grew |= add({bd.p, bd.q - 1}, b.delbar_block(bd) * s);
      grew |= add(bd.swapped(), b.sigma_block(bd) * s.conjugate());
      for (const auto& [other, dim] : b.dims) {
        const CMatrix e = CMatrix::identity(sz(dim));
        auto l = ca.product.table.find({bd, other});
        if (l != ca.product.table.end())
          grew |= add(bd + other + ca.product.offset, product_block(l->second, s, e));
        auto r = ca.product.table.find({other, bd});
        if (r != ca.product.table.end())
          grew |= add(other + bd + ca.product.offset, product_block(r->second, e, s));
      }
    }
  }
  return span;
}

Ideal ideal_sum(const Ideal& a, const Ideal& b) {
  Ideal out = a;
  for (const auto& [bd, v] : b) {
    auto it = out.find(bd);
    out[bd] = it == out.end() ? v : image_basis(hstack(it->second, v));
  }
  return out;
}

Support make_support(const CurrentAlgebra& ca, const std::string& name,
                     const Ideal& ideal, int p) {
  Support s;
  s.name = name;
  s.p = p;
  s.ideal = ideal;
  s.complement = complement_of(ca.currents(), ideal, "X - " + name);
  s.context = diagram_context(ca.currents(), s.complement, p, name);
  return s;
}

StarContext star_context(const CurrentAlgebra& ca, const Support& w, const Support& v) {
  StarContext sc;
  sc.ca = ca;
  sc.w = w;
  sc.v = v;
  sc.p = w.p + v.p - ca.d;
  const BigradedComplex& b = ca.currents();
  sc.uw = w.complement;
  sc.uv = v.complement;
  sc.uwv = complement_of(b, ideal_sum(w.ideal, v.ideal), "X - (" + w.name + " u " + v.name + ")");
  sc.dw = build_deligne(sc.uw.complex, sc.p);
  sc.dv = build_deligne(sc.uv.complex, sc.p);
  sc.dwv = build_deligne(sc.uwv.complex, sc.p);

  auto between = [&](const Complement& from) {
    BigradedMap m;
    for (const auto& [bd, l] : from.lift) {
      auto it = sc.uwv.project.find(bd);
      if (it != sc.uwv.project.end()) m.blocks[bd] = it->second * l;
    }
    return m;
  };
  const ChainMap rw = deligne_chain_map(sc.uw.complex, sc.uwv.complex, between(sc.uw), sc.dw, sc.dwv);
  const ChainMap rv = deligne_chain_map(sc.uv.complex, sc.uwv.complex, between(sc.uv), sc.dv, sc.dwv);
  const ChainComplex sum = direct_sum(sc.dw.chain, sc.dv.chain);
  ChainMap diff;
  for (const auto& [n, k] : sum.dims)
    diff.f[n] = hstack(rw.at(sc.dw.chain, sc.dwv.chain, n), -rv.at(sc.dv.chain, sc.dwv.chain, n));

  DiagramContext& ctx = sc.combined;
  ctx.name = w.name + " * " + v.name;
  ctx.p = sc.p;
  ctx.ambient = build_deligne(b, sc.p);
  ctx.complement = cone(sum, sc.dwv.chain, diff);
  ctx.supports = {w.name, v.name};
  const ChainMap resw = deligne_chain_map(b, sc.uw.complex, BigradedMap{sc.uw.project}, ctx.ambient, sc.dw);
  const ChainMap resv = deligne_chain_map(b, sc.uv.complex, BigradedMap{sc.uv.project}, ctx.ambient, sc.dv);
  for (const auto& [n, k] : ctx.complement.dims) {
    QMatrix m(k, ctx.ambient.chain.dim(n));
    if (m.cols()) {
      const QMatrix top = vstack(resw.at(ctx.ambient.chain, sc.dw.chain, n),
                                 resv.at(ctx.ambient.chain, sc.dv.chain, n));
      m.set_block(0, 0, top);
    }
    ctx.restriction.f[n] = m;
  }
  return sc;
}

namespace {

QMatrix product_host(const StarContext& sc, int n1, const QMatrix& x, int n2, const QMatrix& y) {
  const BigradedComplex& b = sc.ca.currents();
  return wedge_real(b, b, b, sc.ca.product, n1, x, n2, y);
}

// coordinates of the host vector h (in B degree host) pushed into D_n(U,p)
QMatrix into_deligne(const Complement& u, const DeligneComplex& du, const BigradedComplex& b,
                     int n, const QMatrix& h) {
  const int host = du.host_degree(n);
  const QMatrix pushed = deligne_projection(du, n) * u.real_project(b, host) * h;
  return coords_or_throw(du.basis_at(n), pushed, "product leaves D_" + std::to_string(n));
}

}  // namespace

QMatrix wedge_of_cycles(const StarContext& sc, const QMatrix& omega_w, const QMatrix& omega_v) {
  const int nw = 2 * sc.w.p, nv = 2 * sc.v.p, n = 2 * sc.p;
  require_column(omega_w, sc.w.context.ambient.chain.dim(nw), "omega_W");
  require_column(omega_v, sc.v.context.ambient.chain.dim(nv), "omega_V");
  const QMatrix x = sc.w.context.ambient.basis_at(nw) * omega_w;
  const QMatrix y = sc.v.context.ambient.basis_at(nv) * omega_v;
  return coords_or_throw(sc.combined.ambient.basis_at(n), product_host(sc, nw, x, nv, y),
                         "omega_W ^ omega_V leaves D_" + std::to_string(n));
}

TruncatedClass star_product(const StarContext& sc, const GreenObject& gw,
                            const GreenObject& gv, const BigradedMap* pullback) {
  const BigradedComplex& b = sc.ca.currents();
  truncated_defects(sc.w.context, gw.tc);
  truncated_defects(sc.v.context, gv.tc);
  if (pullback) {
    const auto bad = validate_map(b, b, *pullback);
    if (!bad.empty())
      throw InvalidComplex("pullback: " + bad.front().kind + " at " + bad.front().where);
  }
  const int nw = 2 * sc.w.p, nv = 2 * sc.v.p, n = 2 * sc.p;
  auto f = [&](int deg, const QMatrix& h) {
    return pullback ? pullback->real_degree_matrix(b, b, deg) * h : h;
  };
  const DeligneComplex& aw = sc.w.context.ambient;
  const DeligneComplex& av = sc.v.context.ambient;
  const QMatrix ow = f(nw, aw.basis_at(nw) * gw.tc.omega);
  const QMatrix ov = av.basis_at(nv) * gv.tc.omega;

  // g hosts live one degree up in the complements; lift them to B
  const DeligneComplex duw = build_deligne(sc.uw.complex, sc.w.p);
  const DeligneComplex duv = build_deligne(sc.uv.complex, sc.v.p);
  const int hw = nw + 2, hv = nv + 2;
  const QMatrix gW = f(hw, sc.uw.real_lift(b, hw) * (duw.basis_at(nw + 1) * gw.tc.g));
  const QMatrix gV = sc.uv.real_lift(b, hv) * (duv.basis_at(nv + 1) * gv.tc.g);

  TruncatedClass out;
  out.p = sc.p;
  out.omega = coords_or_throw(sc.combined.ambient.basis_at(n), product_host(sc, nw, ow, nv, ov),
                              "omega_W ^ omega_V leaves D_" + std::to_string(n));

  const QMatrix slot_w = into_deligne(sc.uw, sc.dw, b, n + 1, product_host(sc, hw, gW, nv, ov));
  const QMatrix slot_v = into_deligne(sc.uv, sc.dv, b, n + 1, product_host(sc, nw, ow, hv, gV));
  QMatrix cross = product_host(sc, hw - 1, b.real_del(hw) * gW, hv, gV);
  cross -= product_host(sc, hw - 1, b.real_delbar(hw) * gW, hv, gV);
  cross -= product_host(sc, hw, gW, hv - 1, b.real_del(hv) * gV);
  cross += product_host(sc, hw, gW, hv - 1, b.real_delbar(hv) * gV);
  const QMatrix slot_wv = into_deligne(sc.uwv, sc.dwv, b, n + 2, cross);
  out.g = vstack(vstack(slot_w, slot_v), slot_wv);
  return out;
}

namespace {

GreenSetup setup_from(const DolbeaultAlgebra& a, int form_degree, const CMatrix& form,
                      const std::string& name, int p) {
  GreenSetup s;
  s.ca = current_algebra(a);
  const int m = form_degree + 2 * s.ca.d;
  const CMatrix t = current_of_form(a, s.ca.pd, form_degree, form);
  const BigradedComplex& b = s.ca.currents();
  std::vector<std::pair<Bidegree, CMatrix>> gens;
  for (Bidegree bd : b.bidegrees_in_degree(m))
    gens.push_back({bd, t.block(b.offset(bd), 0, sz(b.dim(bd)), 1)});
  s.support = make_support(s.ca, name, ideal_generated(s.ca, gens), p);
  s.delta = s.support.context.ambient.coordinates(2 * p, realify_vectors(t));
  return s;
}

}  // namespace

GreenSetup p1_point_setup() {
  const DolbeaultAlgebra a = kahler_model("P1").algebra;
  return setup_from(a, -2, CMatrix{{Scalar::i()}}, "y", 0);
}

GreenSetup p2_line_setup() {
  const DolbeaultAlgebra a = kahler_model("P2").algebra;
  return setup_from(a, -2, CMatrix{{Scalar::i()}}, "L", 1);
}

}  // namespace fdeligne
