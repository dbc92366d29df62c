#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fdeligne/models.hpp"

using namespace fdeligne;

TEST_CASE("model lookup") {
  CHECK(model_by_name("P2").algebra.dimension == 2);
  CHECK(model_by_name("jet:3").kind == ModelKind::jet);
  CHECK(model_by_name("dual-jet:3").kind == ModelKind::dual_jet);
  CHECK_THROWS_AS(model_by_name("P9"), UnknownModel);
  CHECK_THROWS_AS(model_by_name("jet:x"), UnknownModel);
  CHECK_THROWS_AS(jet_model(0), BadOrder);
}

TEST_CASE("jet dimensions count monomials") {
  for (int N = 1; N <= 5; ++N) {
    const BigradedComplex a = jet_model(N).algebra.complex;
    auto monomials = [](int w) { return w < 0 ? 0 : (w + 1) * (w + 2) / 2; };
    CHECK(a.dim({0, 0}) == monomials(N));
    CHECK(a.dim({-1, 0}) == monomials(N - 1));
    CHECK(a.dim({0, -1}) == monomials(N - 1));
    CHECK(a.dim({-1, -1}) == monomials(N - 2));
    // monomials of total degree s start at s(s+1)/2; t^N is the last one
    CHECK(jet_index(N, 0, 0, 0, N) == N * (N + 1) / 2);
    CHECK(jet_index(N, 0, 0, N, 0) == monomials(N) - 1);
  }
  CHECK(jet_index(2, 1, 1, 1, 0) == -1);
}

TEST_CASE("Kaehler minimal models") {
  const auto p2 = kahler_model("P2");
  CHECK(p2.algebra.complex.variance == Variance::cohomological);
  CHECK(p2.algebra.complex.degree_dim(-4) == 1);
  CHECK(p2.algebra.integral.has_value());
  const auto e = kahler_model("elliptic");
  CHECK(e.algebra.complex.degree_dim(-1) == 2);
}

TEST_CASE("infinite-dimensionality witness") {
  std::size_t prev = 0;
  for (int N = 1; N <= 5; ++N) {
    const std::size_t h = delbar_cohomology_dim(jet_model(N).algebra.complex, {0, 0});
    CHECK(h == static_cast<std::size_t>(N + 1));
    CHECK(h > prev);
    prev = h;
  }
}

TEST_CASE("support sequences are exact and stay exact under D") {
  for (int N = 1; N <= 4; ++N)
    for (int k = 1; k <= N; ++k) {
      const SESTriple s = ses_jet(N, k);
      INFO("N=" << N << " k=" << k);
      CHECK(ses_defects(s).empty());
      const SESTriple ds = dualize_ses(s);
      CHECK(ses_defects(ds).empty());
      for (int p = 0; p <= 3; ++p) {
        const DeligneSES d = deligne_ses(s, -p);
        CHECK(ses_defects(d.sub.chain, d.mid.chain, d.quo.chain, d.inj, d.surj).empty());
        const DeligneSES dd = deligne_ses(ds, p - 1);
        CHECK(ses_defects(dd.sub.chain, dd.mid.chain, dd.quo.chain, dd.inj, dd.surj).empty());
      }
    }
}

TEST_CASE("long exact sequences") {
  for (int N = 1; N <= 4; ++N)
    for (int k = 1; k <= N; ++k)
      for (int p = 0; p <= 3; ++p) {
        INFO("N=" << N << " k=" << k << " p=" << p);
        const LESReport r = les_check(ses_jet(N, k), -p);
        CHECK(r.ok());
        CHECK(r.euler() == 0);
        CHECK(!r.nodes.empty());
        const LESReport rd = les_check(dualize_ses(ses_jet(N, k)), p - 1);
        CHECK(rd.ok());
        CHECK(rd.euler() == 0);
      }
}

TEST_CASE("formal point complex against a hand computation") {
  // C[t]_{<=N} and C[t]_{<=N-1} dt: e = 0 leaves C[t]/R(1), e >= 1 leaves C/R(e+1)
  for (int e = 0; e <= 2; ++e)
    for (int N = 2; N <= 4; ++N) {
      const ChainComplex f = formal_point_complex(e, N);
      INFO("e=" << e << " N=" << N);
      for (int n = -1; n <= 3; ++n) {
        std::size_t expect = 0;
        if (n == 1) expect = e == 0 ? static_cast<std::size_t>(2 * N + 1) : 1;
        CHECK(homology(f, -n).dim == expect);
      }
    }
}

TEST_CASE("formal point complex agrees with D(jet, e+1) once saturated") {
  std::size_t saturated = 0;
  for (int e = 0; e <= 2; ++e)
    for (int N = 2; N <= 4; ++N)
      for (const auto& row : formal_deligne_point_complex(e, N)) {
        INFO("e=" << e << " N=" << N << " n=" << row.degree);
        CHECK(row.agree());
        saturated += row.saturated;
      }
  CHECK(saturated > 0);
}

TEST_CASE("semipurity on the point family") {
  const auto rows = semipurity_scan(0, 4, 1, 5, -2, 10);
  std::size_t above = 0;
  for (const auto& r : rows) {
    INFO("N=" << r.N << " e=" << r.e << " n=" << r.n);
    CHECK(r.ok());
    above += r.above();
  }
  CHECK(above > 0);
}
