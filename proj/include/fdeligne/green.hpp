#pragma once

// Truncated classes and Green objects over a chosen complement, the
// criterion for being Green for a cycle current, the star product and the
// maps a, omega, h.
//
// Everything lives on currents in internal (homological) grading: a cycle
// of dimension p gives a closed element of D_{2p}(B,p), a truncated class
// is (omega, g) with omega in Z D_{2p}(X,p) and g in D_{2p+1}(U,p) with
// d g = omega|_U. Elements are coordinate columns in the Deligne bases.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fdeligne/chain.hpp"
#include "fdeligne/deligne.hpp"
#include "fdeligne/duality.hpp"

namespace fdeligne {

/// Per-bidegree spanning columns of a bigraded subspace.
using Ideal = std::map<Bidegree, CMatrix>;

/// U = B / I for a subcomplex I stable under del, delbar and sigma.
struct Complement {
  BigradedComplex complex;
  std::map<Bidegree, CMatrix> project;  // U <- B
  std::map<Bidegree, CMatrix> lift;     // B <- U, a section of project

  QMatrix real_project(const BigradedComplex& big, int n) const;
  QMatrix real_lift(const BigradedComplex& big, int n) const;
};

/// InvalidComplex if the subspace is not a sub-Dolbeault complex.
Complement complement_of(const BigradedComplex& b, const Ideal& support,
                         const std::string& name);

/// Ambient D(X,p), the complement complex and the restriction.
struct DiagramContext {
  std::string name;
  int p = 0;
  DeligneComplex ambient;
  ChainComplex complement;
  ChainMap restriction;
  std::vector<std::string> supports;

  /// Degrees where the restriction fails to be a chain map.
  std::vector<int> defects() const;
};

DiagramContext diagram_context(const BigradedComplex& b, const Complement& u, int p,
                               const std::string& name);

struct TruncatedClass {
  int p = 0;
  QMatrix omega;  // D_{2p}(X,p)
  QMatrix g;      // complement degree 2p+1
};

/// Closedness of omega and d g = omega|. DegreeMismatch on wrong shapes.
std::vector<std::string> truncated_defects(const DiagramContext& ctx,
                                           const TruncatedClass& tc);

/// A class in H_{2p} of the cone of the restriction, or of D(X,p).
struct HomologyClass {
  std::size_t group_dim = 0;
  QMatrix coords;  // in the basis of homology representatives
  bool zero() const { return coords.is_zero(); }
};

HomologyClass class_map(const DiagramContext& ctx, const TruncatedClass& tc);

struct GreenVerdict {
  bool green = false;
  QMatrix gamma;              // witness in D_{2p+1}(X,p)
  QMatrix beta;               // g = gamma| - d beta in the complement
  HomologyClass obstruction;  // class of (omega - delta, g), nonzero iff not green
};

/// Solves d gamma + delta = omega, gamma| = g modulo boundaries.
GreenVerdict is_green_for(const DiagramContext& ctx, const TruncatedClass& tc,
                          const QMatrix& delta);

/// (d eta, eta|) for eta in D_{2p+1}(X,p).
TruncatedClass a_map(const DiagramContext& ctx, const QMatrix& eta);
QMatrix omega_map(const TruncatedClass& tc);
/// Class of a closed alpha in H_{2p}(X,p).
HomologyClass h_map(const DiagramContext& ctx, const QMatrix& alpha);

struct GreenObject {
  TruncatedClass tc;
  QMatrix delta;  // cycle current in D_{2p}(X,p)
  std::string cycle;
  int twist = 0;
};

/// Currents of a compact model with the product transported through
/// [.]: [a] ^ [b] = [a ^ b], offset (-d,-d).
struct CurrentAlgebra {
  DolbeaultAlgebra forms;
  PairingData pd;
  Wedge product;
  int d = 0;

  const BigradedComplex& currents() const { return pd.currents; }
};

/// NoWedgeDefined without a product or when [.] is not invertible.
CurrentAlgebra current_algebra(const DolbeaultAlgebra& a);

/// Smallest two-sided ideal containing the generators that is stable under
/// del, delbar and sigma.
Ideal ideal_generated(const CurrentAlgebra& ca,
                      const std::vector<std::pair<Bidegree, CMatrix>>& gens);
Ideal ideal_sum(const Ideal& a, const Ideal& b);

/// A support (cycle of dimension p) and its diagram.
struct Support {
  std::string name;
  int p = 0;
  Ideal ideal;
  Complement complement;
  DiagramContext context;
};

Support make_support(const CurrentAlgebra& ca, const std::string& name,
                     const Ideal& ideal, int p);

/// Diagram for W and V together: ambient D(X,p) with p = pW + pV - d and
/// complement s(D(U_W) + D(U_V) -> D(U_W n U_V)).
struct StarContext {
  CurrentAlgebra ca;
  Support w, v;
  int p = 0;
  Complement uw, uv, uwv;
  DeligneComplex dw, dv, dwv;  // at weight p
  DiagramContext combined;
};

StarContext star_context(const CurrentAlgebra& ca, const Support& w, const Support& v);

/// (f*omega_W ^ omega_V, ((f*g_W ^ omega_V, f*omega_W ^ g_V),
///  d'f*g_W ^ g_V - d''f*g_W ^ g_V - f*g_W ^ d'g_V + f*g_W ^ d''g_V)).
/// pullback acts on the currents of the ambient space; nullptr is the identity.
TruncatedClass star_product(const StarContext& sc, const GreenObject& gw,
                            const GreenObject& gv,
                            const BigradedMap* pullback = nullptr);

/// Host-level transported product of two Deligne elements in degree 2pW, 2pV
/// of the ambient, returned as coordinates in D_{2p}(X,p).
QMatrix wedge_of_cycles(const StarContext& sc, const QMatrix& omega_w,
                        const QMatrix& omega_v);

/// Ready-made settings.
struct GreenSetup {
  CurrentAlgebra ca;
  Support support;
  QMatrix delta;  // cycle current of the support in D_{2p}(X,p)
};

/// A point on P1: delta_y = [i vol], p = 0.
GreenSetup p1_point_setup();
/// A line on P2: delta_L = [i omega], p = 1.
GreenSetup p2_line_setup();

}  // namespace fdeligne
