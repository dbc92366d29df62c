// One line per acceptance criterion. Arithmetic is exact throughout, so the
// only tolerances are the wall-clock limits below.
//
//   acceptance <path to the fdeligne binary>

#include <algorithm>
#include <array>
#include <chrono>
#include <climits>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "fdeligne/deligne.hpp"
#include "fdeligne/dolbeault.hpp"
#include "fdeligne/duality.hpp"
#include "fdeligne/green.hpp"
#include "fdeligne/models.hpp"

using namespace fdeligne;

namespace {

// seconds; 0 means unlimited
constexpr double kLimit1 = 1.0;
constexpr double kLimit2 = 5.0;
constexpr double kLimit3 = 10.0;
constexpr double kLimit10 = 30.0;

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::vector<std::string> suite() {
  std::vector<std::string> s = kahler_model_names();
  for (int N = 1; N <= 5; ++N) s.push_back("jet:" + std::to_string(N));
  return s;
}

int top_index(const BigradedComplex& a) {
  int m = INT_MIN;
  for (const auto& [b, d] : a.dims) m = std::max({m, std::abs(b.p), std::abs(b.q)});
  return m;
}

std::string fail_at(const std::string& what) { return "first failure: " + what; }

Outcome c1() {
  for (const auto& name : suite())
    if (!validate_dolbeault(model_by_name(name).algebra.complex).empty())
      return {false, fail_at(name)};
  return {true, std::to_string(suite().size()) + " models"};
}

Outcome c2() {
  std::size_t checked = 0;
  for (const auto& name : suite()) {
    const BigradedComplex a = model_by_name(name).algebra.complex;
    for (int p = -2; p <= top_index(a) + 2; ++p) {
      if (!build_deligne_declared(a, p).chain.is_complex())
        return {false, fail_at(name + " p=" + std::to_string(p))};
      ++checked;
    }
  }
  return {true, std::to_string(checked) + " complexes"};
}

Outcome c3() {
  std::size_t checked = 0;
  std::string conv;
  for (const auto& name : suite()) {
    const BigradedComplex a = model_by_name(name).algebra.complex;
    for (int p = -2; p <= top_index(a) + 2; ++p) {
      try {
        const HomotopyData h = homotopy_maps(a, a.to_internal(p));
        const std::string c = to_string(h.convention);
        if (!conv.empty() && c != conv) return {false, "convention changed at " + name};
        conv = c;
        ++checked;
      } catch (const Error& e) {
        return {false, fail_at(name + " p=" + std::to_string(p) + ": " + e.what())};
      }
    }
  }
  return {true, std::to_string(checked) + " certificates, cone convention " + conv};
}

Outcome c4() {
  std::size_t checked = 0;
  for (const auto& name : suite()) {
    const BigradedComplex a = model_by_name(name).algebra.complex;
    const auto [lo, hi] = a.degree_range();
    const int top = top_index(a);
    const int above = std::max(top, (hi + 1) / 2);
    for (int p = above; p <= above + 2; ++p) {
      const ChainComplex d = build_deligne(a, p).chain, r = real_twisted_complex(a, p);
      for (int n = lo - 2; n <= hi + 2; ++n, ++checked)
        if (homology(d, n).dim != homology(r, n).dim)
          return {false, fail_at(name + " high p=" + std::to_string(p))};
    }
    const int below = std::min(lo - 1 - top, (lo - 2) / 2 - 1);
    for (int p = below - 2; p <= below; ++p) {
      const ChainComplex d = build_deligne(a, p).chain, r = real_twisted_complex(a, p + 1);
      for (int n = lo - 2; n <= hi + 2; ++n, ++checked)
        if (homology(d, n).dim != homology(r, n + 1).dim)
          return {false, fail_at(name + " low p=" + std::to_string(p))};
    }
  }
  return {true, std::to_string(checked) + " degrees"};
}

// Rank conditions of 0 -> D(sub) -> D(mid) -> D(quo) -> 0 in one degree.
bool exact_at(const DeligneSES& s, int n) {
  const std::size_t a = s.sub.chain.dim(n), b = s.mid.chain.dim(n), c = s.quo.chain.dim(n);
  const QMatrix i = s.inj.at(s.sub.chain, s.mid.chain, n);
  const QMatrix q = s.surj.at(s.mid.chain, s.quo.chain, n);
  const std::size_t ri = a && b ? rank(i) : 0, rq = b && c ? rank(q) : 0;
  const bool zero = !(a && b && c) || (q * i).is_zero();
  return ri == a && rq == c && ri + rq == b && zero;
}

Outcome c5() {
  std::size_t checked = 0;
  for (int N = 1; N <= 4; ++N)
    for (int k = 1; k <= N; ++k) {
      const SESTriple s = ses_jet(N, k);
      for (int p = 0; p <= 3; ++p) {
        const DeligneSES d = deligne_ses(s, -p);
        const auto [lo, hi] = s.mid.degree_range();
        for (int n = lo - 2; n <= hi + 2; ++n, ++checked)
          if (!exact_at(d, n))
            return {false, fail_at("N=" + std::to_string(N) + " k=" + std::to_string(k) +
                                   " p=" + std::to_string(p) + " n=" + std::to_string(n))};
      }
    }
  return {true, std::to_string(checked) + " degrees"};
}

Outcome c6() {
  std::size_t nodes = 0;
  for (int N = 1; N <= 4; ++N)
    for (int k = 1; k <= N; ++k) {
      const SESTriple s = ses_jet(N, k);
      const SESTriple ds = dualize_ses(s);
      for (int p = 0; p <= 3; ++p)
        for (const LESReport& r : {les_check(s, -p), les_check(ds, p - 1)}) {
          const std::string at = "N=" + std::to_string(N) + " k=" + std::to_string(k) +
                                 " p=" + std::to_string(p);
          if (!r.ok()) return {false, fail_at(at)};
          if (r.euler() != 0) return {false, "nonzero Euler characteristic at " + at};
          nodes += r.nodes.size();
        }
    }
  return {true, std::to_string(nodes) + " nodes"};
}

std::string regimes(const SignReport& r) {
  std::size_t hit = 0;
  for (const auto& [name, c] : r.cases) hit += c.nonzero > 0;
  return std::to_string(hit) + "/" + std::to_string(r.cases.size());
}

Outcome c7() {
  const ModelDescriptor m = jet_model(2);
  const PairingData pd = dual_complex(m.algebra);
  const SignReport d = check_pairing_differential_signs(pd, -1, 3, -1, 3);
  const SignReport a = check_pairing_action_signs(m.algebra, pd, -1, 2);
  const std::string detail = "differential " + regimes(d) + ", action " + regimes(a);
  const bool pass = d.ok() && a.ok() && d.cases.size() == 2 && a.cases.size() == 4;
  return {pass, detail};
}

Outcome c8() {
  std::size_t pairs = 0;
  for (const auto& name : kahler_model_names()) {
    const ModelDescriptor m = kahler_model(name);
    const int d = m.algebra.dimension;
    for (int n = -2; n <= 2 * d + 3; ++n)
      for (int p = -2; p <= d + 3; ++p) {
        const GramReport g = exceptional_duality(m.algebra, n, p);
        if (g.dim_left == 0 && g.dim_right == 0) continue;
        if (!g.perfect())
          return {false, fail_at(name + " n=" + std::to_string(n) + " p=" + std::to_string(p))};
        ++pairs;
      }
  }
  return {pairs > 0, std::to_string(pairs) + " nonzero pairs"};
}

Outcome c9() {
  std::size_t rows = 0;
  for (const char* name : {"P1", "elliptic"}) {
    const ModelDescriptor m = kahler_model(name);
    const int d = m.algebra.dimension;
    for (const PoincareRow& r : poincare_iso_check(m.algebra, -2, d + 2)) {
      if (!r.ok())
        return {false, fail_at(std::string(name) + " n=" + std::to_string(r.n) +
                               " p=" + std::to_string(r.p))};
      ++rows;
    }
  }
  return {rows > 0, std::to_string(rows) + " rows"};
}

Outcome c10() {
  std::size_t above = 0;
  const auto rows = semipurity_scan(0, 4, 1, 5, -2, 12);
  for (const auto& r : rows) {
    if (!r.ok())
      return {false, fail_at("N=" + std::to_string(r.N) + " e=" + std::to_string(r.e) +
                             " n=" + std::to_string(r.n))};
    above += r.above();
  }
  return {above > 0, std::to_string(rows.size()) + " grid points, " + std::to_string(above) +
                         " above the bound"};
}

Outcome c11() {
  std::string dims;
  std::size_t prev = 0;
  for (int N = 1; N <= 5; ++N) {
    const std::size_t h = delbar_cohomology_dim(jet_model(N).algebra.complex, {0, 0});
    dims += (N > 1 ? "," : "") + std::to_string(h);
    if (h != static_cast<std::size_t>(N + 1) || h <= prev) return {false, "dims " + dims};
    prev = h;
  }
  return {true, "dims " + dims};
}

Outcome c12() {
  const GreenSetup s = p1_point_setup();
  const DiagramContext& ctx = s.support.context;
  const ChainComplex& x = ctx.ambient.chain;
  const int n = 2 * ctx.p;
  const QMatrix g0(ctx.complement.dim(n + 1), 1);
  std::size_t verdicts = 0;
  for (int k = -2; k <= 3; ++k) {
    const GreenVerdict v = is_green_for(ctx, {ctx.p, s.delta * Rational(k), g0}, s.delta);
    if (v.green != (k == 1)) return {false, "wrong verdict at scale " + std::to_string(k)};
    if (v.green && !(x.diff(n + 1) * v.gamma + s.delta == s.delta * Rational(k)))
      return {false, "witness fails at scale 1"};
    if (!v.green && v.obstruction.zero()) return {false, "zero obstruction"};
    ++verdicts;
  }
  std::size_t basis = 0;
  for (const GreenSetup& gs : {p1_point_setup(), p2_line_setup()})
    for (int w = -2; w <= 3; ++w) {
      const DiagramContext c = diagram_context(gs.ca.currents(), gs.support.complement, w, "w");
      const ChainComplex& cx = c.ambient.chain;
      const int m = 2 * c.p;
      for (std::size_t j = 0; j < cx.dim(m + 1); ++j, ++basis) {
        QMatrix eta(cx.dim(m + 1), 1);
        eta(j, 0) = 1;
        const QMatrix expect = cx.dim(m) ? cx.diff(m + 1) * eta : QMatrix(0, 1);
        if (!(omega_map(a_map(c, eta)) == expect)) return {false, "omega o a != d"};
      }
    }
  std::size_t stars = 0;
  const GreenSetup l = p2_line_setup();
  const StarContext sc = star_context(l.ca, l.support, l.support);
  const QMatrix gl(l.support.context.complement.dim(2 * l.support.p + 1), 1);
  for (int a = -2; a <= 2; ++a)
    for (int b = -2; b <= 2; ++b, ++stars) {
      const GreenObject gw{{l.support.p, l.delta * Rational(a), gl}, l.delta, "L", 1};
      const GreenObject gv{{l.support.p, l.delta * Rational(b), gl}, l.delta, "L", 1};
      const TruncatedClass t = star_product(sc, gw, gv);
      if (!(t.omega == wedge_of_cycles(sc, gw.tc.omega, gv.tc.omega)))
        return {false, "omega slot mismatch"};
      if (!truncated_defects(sc.combined, t).empty()) return {false, "star not truncated"};
    }
  const StarContext sp = star_context(s.ca, s.support, s.support);
  const GreenObject y{{ctx.p, s.delta, g0}, s.delta, "y", 0};
  const TruncatedClass ty = star_product(sp, y, y);
  if (!(ty.omega == wedge_of_cycles(sp, s.delta, s.delta))) return {false, "P1 omega slot"};
  ++stars;
  return {true, std::to_string(verdicts) + " verdicts, " + std::to_string(basis) +
                    " basis checks, " + std::to_string(stars) + " star inputs"};
}

Outcome c13() {
  std::size_t saturated = 0, rows = 0;
  for (int e = 0; e <= 2; ++e)
    for (int N = 2; N <= 4; ++N)
      for (const auto& r : formal_deligne_point_complex(e, N)) {
        ++rows;
        if (!r.saturated) continue;
        if (!r.agree())
          return {false, fail_at("e=" + std::to_string(e) + " N=" + std::to_string(N) +
                                 " n=" + std::to_string(r.degree))};
        ++saturated;
      }
  return {saturated > 0, std::to_string(saturated) + "/" + std::to_string(rows) +
                             " saturated degrees agree"};
}

struct Captured {
  std::string out;
  int status = -1;
};

Captured capture(const std::string& cmd) {
  Captured c;
  FILE* f = popen((cmd + " 2>&1").c_str(), "r");
  if (!f) return c;
  std::array<char, 4096> buf{};
  std::size_t k;
  while ((k = fread(buf.data(), 1, buf.size(), f)) > 0) c.out.append(buf.data(), k);
  c.status = pclose(f);
  return c;
}

Outcome c14(const std::string& cli) {
  if (cli.empty()) return {false, "no CLI path given"};
  const std::vector<std::string> jobs = {
      "validate --model P2",
      "validate --model jet:3",
      "deligne-table --model P1 --p 0..2",
      "deligne-table --model elliptic",
      "cone-table --model P1",
      "homotopy-check --model jet:2",
      "duality-check --model P1",
      "pairing-signs",
      "exceptional-duality --model P2",
      "les-check --N 1..2",
      "semipurity --e 0..1 --N 1..2",
      "green-check",
      "green-check --context P2-line --scale 2",
      "star --context P2-line",
  };
  std::size_t runs = 0;
  for (const auto& j : jobs)
    for (const char* fmt : {"table", "json"}) {
      const std::string cmd = "'" + cli + "' " + j + " --format " + fmt;
      const Captured a = capture(cmd), b = capture(cmd);
      if (a.status < 0) return {false, "cannot run " + cmd};
      if (a.out != b.out || a.status != b.status) return {false, "output differs: " + j};
      if (a.out.empty()) return {false, "no output: " + j};
      ++runs;
    }
  return {true, std::to_string(runs) + " command pairs byte-identical"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  struct Criterion {
    int id;
    const char* title;
    double limit;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> all = {
      {1, "Dolbeault validity of the suite", kLimit1, c1},
      {2, "d_D^2 = 0", kLimit2, c2},
      {3, "homotopy equivalence with the cone", kLimit3, c3},
      {4, "degenerate weights agree with the real complex", 0, c4},
      {5, "D(.,p) is exact on jet supports", 0, c5},
      {6, "long exact sequences", 0, c6},
      {7, "pairing sign tables", 0, c7},
      {8, "exceptional duality", 0, c8},
      {9, "Poincare regrade", 0, c9},
      {10, "semipurity scan", kLimit10, c10},
      {11, "infinite-dimensionality witness", 0, c11},
      {12, "Green layer", 0, c12},
      {13, "formal point complex vs D(jet, e+1)", 0, c13},
      {14, "CLI determinism", 0, [&] { return c14(cli); }},
  };
  int failed = 0;
  for (const auto& c : all) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit > 0 && secs >= c.limit) {
      o.pass = false;
      o.detail += ", over the limit";
    }
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(3);
    line << (o.pass ? "PASS" : "FAIL") << "  [" << (c.id < 10 ? " " : "") << c.id << "] "
         << c.title << ": " << o.detail << " (" << secs << " s";
    if (c.limit > 0) line << " < " << c.limit << " s";
    line << ")";
    std::cout << line.str() << std::endl;
    failed += !o.pass;
  }
  std::cout << (failed ? "FAILED " : "ALL PASSED ") << all.size() - failed << "/" << all.size()
            << std::endl;
  return failed ? 1 : 0;
}
