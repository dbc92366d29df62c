#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fdeligne/duality.hpp"
#include "fdeligne/models.hpp"

using namespace fdeligne;

TEST_CASE("dual bidegrees") {
  const BigradedComplex a = jet_model(3).algebra.complex;
  const BigradedComplex b = dual_of(a);
  CHECK(b.variance == Variance::homological);
  for (const auto& [bd, k] : a.dims) CHECK(b.dim(bd.negated()) == k);
  CHECK(validate_dolbeault(b).empty());
}

TEST_CASE("adjointness and double dual on the suite") {
  for (const auto& name : kahler_model_names()) {
    INFO(name);
    const auto m = kahler_model(name);
    CHECK(adjointness_defects(dual_complex(m.algebra)).empty());
    CHECK(double_dual_defects(m.algebra.complex).empty());
  }
  for (int N = 1; N <= 4; ++N) {
    const auto m = jet_model(N);
    CHECK(adjointness_defects(dual_complex(m.algebra)).empty());
    CHECK(double_dual_defects(m.algebra.complex).empty());
  }
}

TEST_CASE("fundamental current is i^-d times the integral") {
  for (const char* name : {"P1", "P2", "P3", "elliptic"}) {
    const auto m = kahler_model(name);
    const int d = m.algebra.dimension;
    const PairingData pd = dual_complex(m.algebra);
    REQUIRE(pd.delta_X.has_value());
    const BigradedComplex& a = m.algebra.complex;
    CMatrix top(a.degree_dim(-2 * d), 1);
    top(a.offset({-d, -d}), 0) = 1;
    INFO(name);
    CHECK(pd.evaluate(2 * d, *pd.delta_X, top) == i_power(-d));
    // [1] = delta_X
    CMatrix one(a.degree_dim(0), 1);
    one(a.offset({0, 0}), 0) = 1;
    CHECK(current_of_form(m.algebra, pd, 0, one) == *pd.delta_X);
  }
}

TEST_CASE("action of forms on currents") {
  const auto m = kahler_model("P1");
  const PairingData pd = dual_complex(m.algebra);
  // (vol ^ delta_X)(1) = delta_X(1 ^ vol) = -i
  const CMatrix vol{{Scalar(1)}};
  const CMatrix t = wedge_action(m.algebra, pd, -2, vol, 2, *pd.delta_X);
  CHECK(pd.evaluate(0, t, CMatrix{{Scalar(1)}}) == Scalar(0, -1));
  CHECK_THROWS_AS(fundamental_current(jet_model(2).algebra), NoFundamentalCurrent);
}

TEST_CASE("regraded currents of a Kaehler model look like its forms") {
  for (const char* name : {"P1", "P2", "elliptic"}) {
    const auto m = kahler_model(name);
    const PairingData pd = dual_complex(m.algebra);
    const BigradedComplex c = regrade(pd.currents, m.algebra.dimension);
    CHECK(c.variance == Variance::cohomological);
    CHECK(validate_dolbeault(c).empty());
    CHECK(c.dims == m.algebra.complex.dims);
  }
}

TEST_CASE("Poincare maps are isomorphisms") {
  for (const auto& name : kahler_model_names()) {
    INFO(name);
    for (const auto& row : poincare_iso_check(kahler_model(name).algebra, -1, 4)) CHECK(row.ok());
  }
}

TEST_CASE("pairing sign tables with every regime hit") {
  const auto m = jet_model(2);
  const PairingData pd = dual_complex(m.algebra);
  const SignReport diff = check_pairing_differential_signs(pd, -1, 3, -1, 3);
  CHECK(diff.cases.size() == 2);
  CHECK(diff.ok());
  const SignReport act = check_pairing_action_signs(m.algebra, pd, -1, 2);
  CHECK(act.cases.size() == 4);
  for (const auto& [k, c] : act.cases) {
    INFO(k);
    CHECK(c.nonzero > 0);
    CHECK(c.violations.empty());
  }
}

TEST_CASE("sign report refuses unexercised regimes") {
  SignReport r;
  r.cases["a"].nonzero = 3;
  r.cases["b"].nonzero = 0;
  CHECK(!r.ok());
}

TEST_CASE("action constraints") {
  CHECK_NOTHROW(require_action_constraints({1, 1, 0, 0, 0, 0}));
  CHECK_THROWS_AS(require_action_constraints({1, 1, 1, 0, 0, 0}), UnsupportedRegime);
  std::string regime;
  action_sign({1, 1, 3, 1, 3, 1}, &regime);
  CHECK(regime == "m>2q,l>=2r");
  action_sign({2, 2, 1, 1, 0, 0}, &regime);
  CHECK(regime == "m<=2q,l>=2r");
}

TEST_CASE("deligne pairing rejects unmatched hosts") {
  const auto m = kahler_model("P1");
  const PairingData pd = dual_complex(m.algebra);
  CHECK_THROWS_AS(deligne_pairing(pd, 0, 0, QMatrix(2, 1), QMatrix(5, 1)), DegreeMismatch);
}

TEST_CASE("exceptional duality is perfect on Kaehler models") {
  for (const auto& name : kahler_model_names()) {
    const auto m = kahler_model(name);
    const int d = m.algebra.dimension;
    for (int n = -1; n <= 2 * d + 2; ++n)
      for (int p = -1; p <= d + 2; ++p) {
        const GramReport g = exceptional_duality(m.algebra, n, p);
        INFO(name << " n=" << n << " p=" << p);
        CHECK(g.dim_left == g.dim_right);
        if (g.dim_left) CHECK(g.perfect());
      }
  }
  // P1: H^1(R(1)) pairs with H^2(R(1))
  const GramReport g = exceptional_duality(kahler_model("P1").algebra, 1, 1);
  CHECK(g.n2 == 2);
  CHECK(g.p2 == 1);
  CHECK(g.rank == 1);
}
