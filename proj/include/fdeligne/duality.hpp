#pragma once

// Currents as the linear dual of a Dolbeault complex of forms, the action of
// forms on currents, the fundamental current and the pairings between
// Deligne complexes of forms and of currents.
//
// B = dual(A) has internal bidegrees B(r,s) = A(-r,-s)^*, so for forms
// B_{r,s} is the dual of A^{r,s}. Bases are dual bases; dT = (-1)^n T o d.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fdeligne/algebra.hpp"
#include "fdeligne/deligne.hpp"

namespace fdeligne {

BigradedComplex dual_of(const BigradedComplex& a);

struct CycleCurrent {
  std::string name;
  int twist = 0;   // power e in (2 pi i)^{-e}, kept as a label
  int degree = 0;  // internal degree in the current complex
  CMatrix coords;
};

struct PairingData {
  BigradedComplex forms;
  BigradedComplex currents;
  std::map<int, CMatrix> evaluation;  // B degree n -> rows B_n, cols A_{-n}
  std::optional<CMatrix> delta_X;     // in B degree 2d
  int dimension = -1;
  std::vector<CycleCurrent> cycles;

  /// T(omega) for T in B_n and omega in internal degree -n of A.
  Scalar evaluate(int n, const CMatrix& t, const CMatrix& omega) const;
};

PairingData dual_complex(const BigradedComplex& a);
/// Also sets delta_X when the algebra is compact and equidimensional.
PairingData dual_complex(const DolbeaultAlgebra& a);

/// Pairs (n, basis) where <dT, phi> != (-1)^n <T, d phi>; plus perfectness.
std::vector<std::string> adjointness_defects(const PairingData& pd);
/// dual(dual(a)) against a through x |-> (-1)^n x.
std::vector<std::string> double_dual_defects(const BigradedComplex& a);

/// Structure constants of (omega ^ T)(eta) = T(eta ^ omega), forms of `a`
/// acting on currents in `b = dual_of(a.complex)`.
Wedge action_wedge(const DolbeaultAlgebra& a, const BigradedComplex& b);
/// omega in internal degree n of the forms, t in degree m of the currents.
CMatrix wedge_action(const DolbeaultAlgebra& a, const PairingData& pd, int n,
                     const CMatrix& omega, int m, const CMatrix& t);

/// delta_X(eta) = i^{-d} \int eta, a current of bidegree (d,d).
CMatrix fundamental_current(const DolbeaultAlgebra& a);
/// [omega] = omega ^ delta_X; omega in internal degree n, result in n + 2d.
CMatrix current_of_form(const DolbeaultAlgebra& a, const PairingData& pd, int n,
                        const CMatrix& omega);
CMatrix current_of_form_matrix(const DolbeaultAlgebra& a, const PairingData& pd,
                               int n);

/// Currents of dimension d viewed as a cohomological complex:
/// C^n = B_{2d-n}, bidegrees shifted by (-d,-d), conjugation times (-1)^d,
/// so that D^n(C,p) = D_{2d-n}(B,d-p).
BigradedComplex regrade(const BigradedComplex& currents, int d);

struct PoincareRow {
  int n = 0, p = 0;  // H^n(X, R(p)) -> H_{2d-n}(X, R(d-p))
  std::size_t dim_forms = 0, dim_currents = 0, rank = 0;
  bool chain_map = true;
  bool ok() const { return chain_map && dim_forms == dim_currents && rank == dim_forms; }
};
std::vector<PoincareRow> poincare_iso_check(const DolbeaultAlgebra& a, int p_lo,
                                            int p_hi);

/// Realified pairing T(omega), asserting a rational value.
Rational pair_real(const QMatrix& t, const QMatrix& omega);
/// T(omega) for omega in D^n(A,p) and T in D_{n-1}(B,p-1), given as host
/// vectors. DegreeMismatch when the hosts do not pair.
Rational deligne_pairing(const PairingData& pd, int n, int p, const QMatrix& omega,
                         const QMatrix& t);
/// Chain-level pairing matrix: rows D_{n-1}(B,p-1), columns D^n(A,p).
QMatrix deligne_pairing_matrix(const PairingData& pd, int n, int p);

struct SignCase {
  std::string regime;
  std::size_t checked = 0;  // basis tuples examined
  std::size_t nonzero = 0;  // tuples with a nonzero value
  std::vector<std::string> violations;
};

struct SignReport {
  std::map<std::string, SignCase> cases;
  /// Every case passed and was hit with a nonzero value.
  bool ok() const;
};

SignReport check_pairing_differential_signs(const PairingData& pd, int n_lo,
                                            int n_hi, int p_lo, int p_hi);

/// omega in D^n(A,p), T in D_m(B,q), eta in D^l(A,r) with n - m + l = 1
/// and p - q + r = 1. Outside those constraints UnsupportedRegime is thrown.
struct ActionTriple {
  int n, p, m, q, l, r;
};
void require_action_constraints(const ActionTriple& t);
/// Returns the sign of the table for the regime of (m, q, l, r).
int action_sign(const ActionTriple& t, std::string* regime = nullptr);
SignReport check_pairing_action_signs(const DolbeaultAlgebra& a, const PairingData& pd,
                                      int lo, int hi);

/// omega . T: Deligne action of D^n(A,p) on D_m(B,q), host vectors.
QMatrix deligne_action(const DolbeaultAlgebra& a, const PairingData& pd,
                       const Wedge& act, int n, int p, const QMatrix& omega, int m,
                       int q, const QMatrix& t);

struct GramReport {
  int n = 0, p = 0, n2 = 0, p2 = 0;
  std::size_t dim_left = 0, dim_right = 0, rank = 0;
  QMatrix gram;
  bool perfect() const { return dim_left == dim_right && rank == dim_left; }
};

/// H^n(X,R(p)) x H^{2d-n+1}(X,R(d-p+1)) -> R through [.] and the pairing.
GramReport exceptional_duality(const DolbeaultAlgebra& a, int n, int p);

}  // namespace fdeligne
