#pragma once

// Finite stand-ins for the analytic complexes: minimal models of compact
// Kaehler manifolds, jet truncations of Whitney forms at a point, their
// current duals, short exact sequences of supports, and the scans built on
// top of them.

#include <map>
#include <string>
#include <vector>

#include "fdeligne/algebra.hpp"
#include "fdeligne/chain.hpp"
#include "fdeligne/deligne.hpp"
#include "fdeligne/duality.hpp"

namespace fdeligne {

enum class ModelKind { kahler, jet, dual_jet, synthetic };
std::string to_string(ModelKind k);

struct ModelDescriptor {
  std::string name;
  ModelKind kind = ModelKind::synthetic;
  std::map<std::string, int> params;
  std::string role;  // which space of the geometric setup the complex models
  DolbeaultAlgebra algebra;
};

/// point, P1, P2, P3 (also "Pn" with n <= 3), elliptic. UnknownModel otherwise.
ModelDescriptor kahler_model(const std::string& name);
/// Names accepted by kahler_model.
std::vector<std::string> kahler_model_names();

/// Polynomial jets in t, tbar with weight (degree + form degree) <= N.
ModelDescriptor jet_model(int N);
/// Resolves "point", "P1", ..., "jet:N" and "dual-jet:N".
ModelDescriptor model_by_name(const std::string& name);

/// Monomial index of t^a tbar^b (form part eps1 dt + eps2 dtbar) in the
/// basis of its bidegree, for a jet model of order N. -1 if absent.
int jet_index(int N, int eps1, int eps2, int a, int b);

struct SESTriple {
  BigradedComplex sub, mid, quo;
  BigradedMap inj;   // sub -> mid
  BigradedMap surj;  // mid -> quo
};

/// Per-bidegree exactness and chain-map checks; empty iff exact.
std::vector<std::string> ses_defects(const SESTriple& s);

/// 0 -> jets of weight in [k, N] -> jet_model(N) -> jet_model(k-1) -> 0.
SESTriple ses_jet(int N, int k);
/// Dual sequence 0 -> quo^* -> mid^* -> sub^* -> 0.
SESTriple dualize_ses(const SESTriple& s);

/// Chain-level data of D(., p) applied to a SES (internal weight p).
struct DeligneSES {
  DeligneComplex sub, mid, quo;
  ChainMap inj, surj;
};
DeligneSES deligne_ses(const SESTriple& s, int p);

struct LESNode {
  std::string label;  // e.g. "H_3(sub)"
  std::size_t dim = 0;
  std::size_t rank_in = 0, rank_out = 0;
  bool exact() const { return rank_in + rank_out == dim; }
};

struct LESReport {
  int p = 0;  // internal weight
  std::vector<LESNode> nodes;
  std::vector<std::string> defects;  // SES-level problems
  long euler() const;
  bool ok() const;
};

/// Long exact homology sequence of the Deligne complexes, connecting maps
/// from the snake construction. p is the internal weight.
LESReport les_check(const SESTriple& s, int p);

struct PointComplexRow {
  int degree = 0;
  std::size_t formal = 0;       // cohomology of R(e+1) -> Omega^0 -> ... -> Omega^e
  std::size_t deligne = 0;      // H^n of D(jet_model(N), e+1)
  bool saturated = false;       // both unchanged from N to N+1
  bool agree() const { return formal == deligne; }
};

/// The complex R(e+1) -> Omega^0 -> ... -> Omega^e at a point, holomorphic
/// jets truncated at order N, realified. Degrees are cohomological.
ChainComplex formal_point_complex(int e, int N);
std::vector<PointComplexRow> formal_deligne_point_complex(int e, int N);

struct SemipurityRow {
  int N = 0, e = 0, n = 0;
  std::size_t dim = 0;
  int bound = 0;  // max(e + p, 2p - 1)
  bool above() const { return n > bound; }
  bool ok() const { return !above() || dim == 0; }
};

/// Point family: tempered currents dual to jet_model(N); p = dim Y = 0.
std::vector<SemipurityRow> semipurity_scan(int e_lo, int e_hi, int N_lo, int N_hi,
                                           int n_lo, int n_hi);

}  // namespace fdeligne
