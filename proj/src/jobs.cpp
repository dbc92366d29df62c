#include "fdeligne/jobs.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fdeligne/complex_io.hpp"
#include "fdeligne/green.hpp"
#include "fdeligne/models.hpp"

namespace fdeligne {

Range parse_range(const std::string& text) {
  auto num = [&](const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::logic_error&) {
      used = 0;
    }
    if (s.empty() || used != s.size()) throw BadArgument("bad range '" + text + "'");
    return v;
  };
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const int v = num(text);
    return {v, v};
  }
  Range r{num(text.substr(0, dots)), num(text.substr(dots + 2))};
  if (r.hi < r.lo) throw BadArgument("empty range '" + text + "'");
  return r;
}

bool Report::passed() const {
  return error.empty() &&
         std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.second; });
}

std::string render_table(const Report& r) {
  std::ostringstream o;
  o << r.command;
  if (!r.subject.empty()) o << " " << r.subject;
  o << "\n";
  for (const auto& [k, v] : r.meta) o << "  " << k << ": " << v << "\n";
  if (!r.columns.empty()) {
    std::vector<std::size_t> w(r.columns.size());
    for (std::size_t c = 0; c < w.size(); ++c) w[c] = r.columns[c].size();
    for (const auto& row : r.rows)
      for (std::size_t c = 0; c < row.size() && c < w.size(); ++c) w[c] = std::max(w[c], row[c].size());
    auto line = [&](const std::vector<std::string>& cells) {
      std::string s;
      for (std::size_t c = 0; c < cells.size(); ++c) {
        if (c) s += "  ";
        s += std::string(w[c] - cells[c].size(), ' ') + cells[c];
      }
      o << s << "\n";
    };
    line(r.columns);
    for (const auto& row : r.rows) line(row);
  }
  for (const auto& [name, ok] : r.checks) o << (ok ? "PASS " : "FAIL ") << name << "\n";
  if (!r.error.empty()) o << "ERROR " << r.error << "\n";
  o << (r.passed() ? "PASS" : "FAIL") << "\n";
  return o.str();
}

std::string render_json(const Report& r) {
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["command"] = r.command;
  j["subject"] = r.subject;
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.meta) meta[k] = v;
  j["meta"] = meta;
  j["columns"] = r.columns;
  j["rows"] = r.rows;
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const auto& [name, ok] : r.checks) checks.push_back({{"name", name}, {"pass", ok}});
  j["checks"] = checks;
  if (!r.error.empty()) j["error"] = r.error;
  j["status"] = r.passed() ? "PASS" : "FAIL";
  j["exit"] = r.status;
  return j.dump(2) + "\n";
}

std::vector<std::string> job_commands() {
  return {"validate",    "deligne-table",       "cone-table", "homotopy-check",
          "duality-check", "pairing-signs",     "exceptional-duality", "les-check",
          "semipurity",  "green-check",         "star"};
}

namespace {

std::string str(long v) { return std::to_string(v); }
std::string str(std::size_t v) { return std::to_string(v); }
std::string str(int v) { return std::to_string(v); }
std::string yes(bool b) { return b ? "yes" : "no"; }

std::string column_text(const QMatrix& v) {
  std::string s = "(";
  for (std::size_t r = 0; r < v.rows(); ++r) s += (r ? ", " : "") + to_string(v(r, 0));
  return s + ")";
}

Range window(const JobSpec& job, const std::optional<Range>& r, Range dflt) {
  const Range out = r.value_or(dflt);
  if (out.hi - out.lo + 1 > job.cap)
    throw BadArgument("range " + str(out.lo) + ".." + str(out.hi) + " exceeds cap " + str(job.cap));
  return out;
}

ModelDescriptor load(const JobSpec& job, const std::string& fallback = "") {
  if (!job.file.empty()) {
    ComplexFile f = read_complex_file(job.file);
    ModelDescriptor m;
    m.name = f.complex.name.empty() ? job.file : f.complex.name;
    m.kind = ModelKind::synthetic;
    m.algebra.complex = f.complex;
    m.algebra.dimension = f.dimension;
    return m;
  }
  const std::string name = job.model.empty() ? fallback : job.model;
  if (name.empty()) throw BadArgument("--model or --file is required");
  ModelDescriptor m = model_by_name(name);
  require_valid(m.algebra.complex);
  return m;
}

// declared degree range of a complex
Range declared_degrees(const BigradedComplex& c) {
  const auto [lo, hi] = c.degree_range();
  const int a = c.to_external(lo), b = c.to_external(hi);
  return {std::min(a, b), std::max(a, b)};
}

std::vector<int> declared_order(const BigradedComplex& c, const ChainComplex& ch) {
  std::vector<int> out;
  for (const auto& [n, k] : ch.dims) out.push_back(c.to_external(n));
  std::sort(out.begin(), out.end());
  return out;
}

void describe(Report& r, const ModelDescriptor& m) {
  r.subject = m.name;
  r.meta.push_back({"variance", to_string(m.algebra.complex.variance)});
  if (m.algebra.dimension >= 0) r.meta.push_back({"dimension", str(m.algebra.dimension)});
  if (m.kind == ModelKind::kahler)
    r.meta.push_back({"model", "minimal-model (zero differentials, harmonic representatives)"});
}

Report validate_job(const JobSpec& job) {
  Report r;
  r.command = job.command;
  ModelDescriptor m;
  if (!job.file.empty()) {
    ComplexFile f = parse_complex_text([&] {
      std::ostringstream ss;
      std::ifstream in(job.file);
      if (!in) throw ParseError(0, 0, "cannot open " + job.file);
      ss << in.rdbuf();
      return ss.str();
    }());
    m.name = f.complex.name.empty() ? job.file : f.complex.name;
    m.algebra.complex = f.complex;
    m.algebra.dimension = f.dimension;
  } else {
    if (job.model.empty()) throw BadArgument("--model or --file is required");
    m = model_by_name(job.model);
  }
  describe(r, m);
  const auto v = validate_dolbeault(m.algebra.complex);
  r.columns = {"kind", "where"};
  for (const auto& x : v) r.rows.push_back({x.kind, x.where});
  r.checks.push_back({"Dolbeault identities", v.empty()});
  if (!v.empty()) r.status = kExitInvalid;
  return r;
}

Report deligne_table_job(const JobSpec& job) {
  Report r;
  r.command = job.command;
  const ModelDescriptor m = load(job);
  const BigradedComplex& c = m.algebra.complex;
  describe(r, m);
  const Range deg = declared_degrees(c);
  const Range pw = window(job, job.p, {deg.lo - 1, deg.hi + 1});
  r.columns = {"p", "n", "dim D", "dim H"};
  bool square = true;
  for (int p = pw.lo; p <= pw.hi; ++p) {
    const DeligneComplex dc = build_deligne(c, c.to_internal(p));
    square = square && dc.chain.is_complex();
    for (int n : declared_order(c, dc.chain)) {
      if (job.n && (n < job.n->lo || n > job.n->hi)) continue;
      const int in = c.to_internal(n);
      r.rows.push_back({str(p), str(n), str(dc.chain.dim(in)), str(homology(dc.chain, in).dim)});
    }
  }
  r.checks.push_back({"d_D^2 = 0", square});
  return r;
}

Report cone_table_job(const JobSpec& job) {
  Report r;
  r.command = job.command;
  const ModelDescriptor m = load(job);
  const BigradedComplex& c = m.algebra.complex;
  describe(r, m);
  const Range deg = declared_degrees(c);
  const Range pw = window(job, job.p, {deg.lo - 1, deg.hi + 1});
  r.columns = {"p", "n", "dim cone", "dim H cone", "dim H D"};
  bool same = true, square = true;
  for (int p = pw.lo; p <= pw.hi; ++p) {
    const int pi = c.to_internal(p);
    const ConeComplex cc = build_cone(c, pi);
    const DeligneComplex dc = build_deligne(c, pi);
    square = square && cc.chain.is_complex();
    std::vector<int> ns = declared_order(c, cc.chain);
    for (int n : declared_order(c, dc.chain))
      if (std::find(ns.begin(), ns.end(), n) == ns.end()) ns.push_back(n);
    std::sort(ns.begin(), ns.end());
    for (int n : ns) {
      const int in = c.to_internal(n);
      const auto hc = homology(cc.chain, in).dim, hd = homology(dc.chain, in).dim;
      same = same && hc == hd;
      r.rows.push_back({str(p), str(n), str(cc.chain.dim(in)), str(hc), str(hd)});
    }
  }
  r.meta.push_back({"cone convention", to_string(ConeConvention::standard)});
  r.checks.push_back({"cone is a complex", square});
  r.checks.push_back({"H(cone) = H(D) in every degree", same});
  return r;
}

Report homotopy_job(const JobSpec& job) {
  Report r;
  r.command = job.command;
  const ModelDescriptor m = load(job);
  const BigradedComplex& c = m.algebra.complex;
  describe(r, m);
  const Range deg = declared_degrees(c);
  const Range pw = window(job, job.p, {deg.lo - 2, deg.hi + 2});
  r.columns = {"p", "convention", "psi phi = 1", "phi psi - 1 = dh + hd"};
  bool all = true;
  std::string frozen;
  for (int p = pw.lo; p <= pw.hi; ++p) {
    try {
      const HomotopyData hd = homotopy_maps(c, c.to_internal(p));
      const std::string conv = hd.convention == ConeConvention::standard ? "standard" : "negated";
      if (frozen.empty()) frozen = to_string(hd.convention);
      r.rows.push_back({str(p), conv, "yes", "yes"});
    } catch (const HomotopyIdentityFailure&) {
      all = false;
      r.rows.push_back({str(p), "none", "no", "no"});
    }
  }
  r.meta.push_back({"cone convention", frozen.empty() ? "none certified" : frozen});
  r.checks.push_back({"homotopy identities", all});
  return r;
}

Report duality_job(const JobSpec& job) {
  Report r;
  r.command = job.command;
  const ModelDescriptor m = load(job);
  const DolbeaultAlgebra& a = m.algebra;
  describe(r, m);
  const PairingData pd = dual_complex(a);
  const auto adj = adjointness_defects(pd);
  const auto dd = double_dual_defects(a.complex);
  r.checks.push_back({"dT(phi) = (-1)^n T(d phi), perfect evaluation", adj.empty()});
  r.checks.push_back({"double dual", dd.empty()});
  if (pd.delta_X) {
    const int d = pd.dimension;
    const Range pw = window(job, job.p, {-1, d + 1});
    r.columns = {"p", "n", "H forms", "H currents", "rank", "iso"};
    bool ok = true;
    for (const auto& row : poincare_iso_check(a, pw.lo, pw.hi)) {
      if (job.n && (row.n < job.n->lo || row.n > job.n->hi)) continue;
      ok = ok && row.ok();
      r.rows.push_back({str(row.p), str(row.n), str(row.dim_forms), str(row.dim_currents),
                        str(row.rank), yes(row.ok())});
    }
    r.checks.push_back({"H^n(X,R(p)) -> H_{2d-n}(X,R(d-p)) bijective", ok});
  } else {
    r.meta.push_back({"poincare", "skipped (no fundamental current)"});
  }
  return r;
}

void sign_rows(Report& r, const std::string& table, const SignReport& s) {
  for (const auto& [name, c] : s.cases)
    r.rows.push_back({table, name, str(c.checked), str(c.nonzero), str(c.violations.size())});
}

Report pairing_signs_job(const JobSpec& job) {
  Report r;
  r.command = job.command;
  const ModelDescriptor m = load(job, "jet:2");
  describe(r, m);
  const PairingData pd = dual_complex(m.algebra);
  const Range nw = window(job, job.n, {-1, 3});
  const Range pw = window(job, job.p, {-1, 3});
  r.columns = {"table", "regime", "checked", "nonzero", "violations"};
  const SignReport diff = check_pairing_differential_signs(pd, nw.lo, nw.hi, pw.lo, pw.hi);
  sign_rows(r, "differential", diff);
  r.checks.push_back({"differential sign table, both regimes hit", diff.ok()});
  if (m.algebra.wedge) {
    const Range aw = window(job, job.e, {-1, 2});
    const SignReport act = check_pairing_action_signs(m.algebra, pd, aw.lo, aw.hi);
    sign_rows(r, "action", act);
    r.checks.push_back({"action sign table, all four regimes hit", act.ok()});
  } else {
    r.meta.push_back({"action", "skipped (no product)"});
  }
  return r;
}

Report exceptional_job(const JobSpec& job) {
  Report r;
  r.command = job.command;
  const ModelDescriptor m = load(job);
  const DolbeaultAlgebra& a = m.algebra;
  describe(r, m);
  if (a.dimension < 0) throw NoFundamentalCurrent("'" + m.name + "' declares no dimension");
  const int d = a.dimension;
  const Range nw = window(job, job.n, {-1, 2 * d + 2});
  const Range pw = window(job, job.p, {-1, d + 2});
  r.columns = {"n", "p", "n'", "p'", "dim", "dim'", "rank", "perfect"};
  bool ok = true;
  for (int n = nw.lo; n <= nw.hi; ++n)
    for (int p = pw.lo; p <= pw.hi; ++p) {
      const GramReport g = exceptional_duality(a, n, p);
      if (g.dim_left == 0 && g.dim_right == 0) continue;
      const bool perfect = g.perfect();
      ok = ok && perfect;
      r.rows.push_back({str(n), str(p), str(g.n2), str(g.p2), str(g.dim_left),
                        str(g.dim_right), str(g.rank), yes(perfect)});
    }
  r.checks.push_back({"perfect pairing on every nonzero pair", ok});
  return r;
}

Report les_job(const JobSpec& job) {
  Report r;
  r.command = job.command;
  r.subject = "jet";
  const Range Nw = window(job, job.N, {1, 4});
  const Range pw = window(job, job.p, {0, 3});
  if (Nw.lo < 1) throw BadOrder("N must be >= 1");
  if (job.k && (job.k->lo < 1 || job.k->lo > Nw.hi))
    throw BadOrder("inner order k = " + str(job.k->lo) + " outside [1, " + str(Nw.hi) + "]");
  r.columns = {"N", "k", "p", "sequence", "nodes", "exact nodes", "euler", "ok"};
  bool ok = true;
  for (int N = Nw.lo; N <= Nw.hi; ++N) {
    const Range kw = job.k ? *job.k : Range{1, N};
    for (int k = std::max(1, kw.lo); k <= std::min(N, kw.hi); ++k) {
      const SESTriple s = ses_jet(N, k);
      const SESTriple ds = dualize_ses(s);
      for (int p = pw.lo; p <= pw.hi; ++p) {
        const std::pair<const char*, LESReport> reps[] = {{"forms", les_check(s, -p)},
                                                          {"currents", les_check(ds, p - 1)}};
        for (const auto& [label, rep] : reps) {
          std::size_t exact = 0;
          for (const auto& node : rep.nodes) exact += node.exact();
          ok = ok && rep.ok() && rep.euler() == 0;
          r.rows.push_back({str(N), str(k), str(p), label, str(rep.nodes.size()), str(exact),
                            str(rep.euler()), yes(rep.ok() && rep.euler() == 0)});
        }
      }
    }
  }
  r.checks.push_back({"long exact sequences exact, Euler characteristic 0", ok});
  return r;
}

Report semipurity_job(const JobSpec& job) {
  Report r;
  r.command = job.command;
  if (job.family != "point") throw UnknownModel("family '" + job.family + "'");
  r.subject = "family point";
  const Range ew = window(job, job.e, {0, 4});
  const Range Nw = window(job, job.N, {1, 5});
  const Range nw = window(job, job.n, {-2, 2 * ew.hi + 2});
  if (Nw.lo < 1) throw BadOrder("N must be >= 1");
  r.meta.push_back({"bound", "max(e+p, 2p-1) with p = 0"});
  r.meta.push_back({"scope", "finite jet truncations; evidence, not proof"});
  r.columns = {"N", "e", "n", "dim H", "bound", "above", "ok"};
  bool ok = true;
  for (const auto& row : semipurity_scan(ew.lo, ew.hi, Nw.lo, Nw.hi, nw.lo, nw.hi)) {
    ok = ok && row.ok();
    r.rows.push_back({str(row.N), str(row.e), str(row.n), str(row.dim), str(row.bound),
                      yes(row.above()), yes(row.ok())});
  }
  r.checks.push_back({"zero homology above the bound", ok});
  return r;
}

GreenSetup setup_for(const std::string& context) {
  if (context == "P1-point") return p1_point_setup();
  if (context == "P2-line") return p2_line_setup();
  throw UnknownModel("context '" + context + "' (P1-point, P2-line)");
}

Report green_job(const JobSpec& job) {
  Report r;
  r.command = job.command;
  r.subject = job.context;
  Rational scale;
  try {
    const Scalar s = Scalar::parse(job.scale);
    if (!s.is_real()) throw BadArgument("scale must be rational");
    scale = s.re();
  } catch (const std::invalid_argument& e) {
    throw BadArgument(std::string("scale: ") + e.what());
  }
  const GreenSetup s = setup_for(job.context);
  const DiagramContext& ctx = s.support.context;
  const int n = 2 * ctx.p;
  TruncatedClass tc{ctx.p, s.delta * scale, QMatrix(ctx.complement.dim(n + 1), 1)};
  r.meta.push_back({"cycle", s.support.name});
  r.meta.push_back({"weight", str(ctx.p)});
  r.meta.push_back({"omega", "scale * delta, scale = " + to_string(scale)});
  const auto defects = truncated_defects(ctx, tc);
  r.checks.push_back({"truncated class", defects.empty()});
  const GreenVerdict v = is_green_for(ctx, tc, s.delta);
  r.columns = {"item", "value"};
  r.rows.push_back({"verdict", v.green ? "GREEN" : "NOT-GREEN"});
  if (v.green) {
    r.rows.push_back({"gamma", column_text(v.gamma)});
    r.rows.push_back({"beta", column_text(v.beta)});
    const QMatrix lhs = ctx.ambient.chain.diff(n + 1) * v.gamma + s.delta;
    r.checks.push_back({"d gamma + delta = omega", lhs == tc.omega});
  } else {
    r.rows.push_back({"obstruction", column_text(v.obstruction.coords)});
    r.checks.push_back({"obstruction class nonzero", !v.obstruction.zero()});
  }
  r.rows.push_back({"class", column_text(class_map(ctx, tc).coords)});
  // omega(a(eta)) = d eta on a basis
  bool oa = true;
  const std::size_t m = ctx.ambient.chain.dim(n + 1);
  for (std::size_t j = 0; j < m; ++j) {
    QMatrix e(m, 1);
    e(j, 0) = 1;
    oa = oa && omega_map(a_map(ctx, e)) == ctx.ambient.chain.diff(n + 1) * e;
  }
  r.checks.push_back({"omega o a = d_D", oa});
  r.checks.push_back({"Green for delta", v.green});
  return r;
}

Report star_job(const JobSpec& job) {
  Report r;
  r.command = job.command;
  r.subject = job.context;
  const GreenSetup s = setup_for(job.context);
  const StarContext sc = star_context(s.ca, s.support, s.support);
  const DiagramContext& ctx = s.support.context;
  GreenObject g{{ctx.p, s.delta, QMatrix(ctx.complement.dim(2 * ctx.p + 1), 1)}, s.delta,
                s.support.name, ctx.p};
  const TruncatedClass t = star_product(sc, g, g);
  r.meta.push_back({"weight", str(sc.p)});
  r.meta.push_back({"pullback", "identity"});
  r.columns = {"slot", "value"};
  r.rows.push_back({"omega", column_text(t.omega)});
  r.rows.push_back({"g", column_text(t.g)});
  r.checks.push_back({"omega slot = omega_W ^ omega_V",
                      t.omega == wedge_of_cycles(sc, g.tc.omega, g.tc.omega)});
  r.checks.push_back({"result is a truncated class", truncated_defects(sc.combined, t).empty()});
  r.checks.push_back({"combined restriction is a chain map", sc.combined.defects().empty()});
  return r;
}

}  // namespace

Report run_report(const JobSpec& job) {
  const std::string& c = job.command;
  if (c == "validate") return validate_job(job);
  if (c == "deligne-table") return deligne_table_job(job);
  if (c == "cone-table") return cone_table_job(job);
  if (c == "homotopy-check") return homotopy_job(job);
  if (c == "duality-check") return duality_job(job);
  if (c == "pairing-signs") return pairing_signs_job(job);
  if (c == "exceptional-duality") return exceptional_job(job);
  if (c == "les-check") return les_job(job);
  if (c == "semipurity") return semipurity_job(job);
  if (c == "green-check") return green_job(job);
  if (c == "star") return star_job(job);
  throw BadArgument("unknown command '" + c + "'");
}

JobResult run(const JobSpec& job) {
  Report r;
  try {
    r = run_report(job);
    if (r.status == kExitOk && !r.passed()) r.status = kExitCheck;
  } catch (const ParseError& e) {
    r = {};
    r.error = e.what();
    r.status = kExitParse;
  } catch (const UnknownModel& e) {
    r = {};
    r.error = e.what();
    r.status = kExitParse;
  } catch (const BadOrder& e) {
    r = {};
    r.error = e.what();
    r.status = kExitParse;
  } catch (const BadArgument& e) {
    r = {};
    r.error = e.what();
    r.status = kExitParse;
  } catch (const InvalidComplex& e) {
    r = {};
    r.error = e.what();
    r.status = kExitInvalid;
  } catch (const Error& e) {
    r = {};
    r.error = e.what();
    r.status = kExitCheck;
  }
  if (r.command.empty()) r.command = job.command;
  return {job.json ? render_json(r) : render_table(r), r.status};
}

}  // namespace fdeligne
