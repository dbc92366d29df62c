#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "fdeligne/dolbeault.hpp"
#include "fdeligne/models.hpp"

using namespace fdeligne;

namespace {

bool has_kind(const std::vector<Violation>& v, const std::string& k) {
  return std::any_of(v.begin(), v.end(), [&](const Violation& x) { return x.kind == k; });
}

BigradedComplex point() { return kahler_model("point").algebra.complex; }

}  // namespace

TEST_CASE("suite models are valid") {
  for (const auto& n : kahler_model_names()) CHECK(validate_dolbeault(kahler_model(n).algebra.complex).empty());
  for (int N = 1; N <= 5; ++N) {
    CHECK(validate_dolbeault(jet_model(N).algebra.complex).empty());
    CHECK(validate_dolbeault(model_by_name("dual-jet:" + std::to_string(N)).algebra.complex).empty());
  }
}

TEST_CASE("each violation kind is detected") {
  BigradedComplex a = point();
  a.del[{0, 0}] = CMatrix(2, 1);
  CHECK(has_kind(validate_dolbeault(a), "block-shape"));
  CHECK_THROWS_AS(require_valid(a), InvalidComplex);

  BigradedComplex b;
  b.dims = {{{0, 0}, 1}, {{1, 0}, 1}, {{0, 1}, 2}};
  b.sigma[{0, 0}] = CMatrix{{Scalar(1)}};
  CHECK(has_kind(validate_dolbeault(b), "conjugation symmetry"));

  BigradedComplex c = point();
  c.sigma[{0, 0}] = CMatrix{{Scalar(2)}};
  CHECK(has_kind(validate_dolbeault(c), "sigma-involution"));

  BigradedComplex d;
  for (int k = 0; k <= 2; ++k) {
    d.dims[{-k, 0}] = 1;
    d.dims[{0, -k}] = 1;
  }
  d.del[{0, 0}] = CMatrix{{Scalar(1)}};
  d.del[{-1, 0}] = CMatrix{{Scalar(1)}};
  d.delbar[{0, 0}] = CMatrix{{Scalar(1)}};
  d.delbar[{0, -1}] = CMatrix{{Scalar(1)}};
  for (auto [bd, k] : d.dims) d.sigma[bd] = CMatrix{{Scalar(1)}};
  const auto v = validate_dolbeault(d);
  CHECK(has_kind(v, "del-squared"));
  CHECK(has_kind(v, "delbar-squared"));

  // anticommutation: del and delbar into (-1,-1) with the same sign
  BigradedComplex e;
  e.dims = {{{0, 0}, 1}, {{-1, 0}, 1}, {{0, -1}, 1}, {{-1, -1}, 1}};
  e.del[{0, 0}] = CMatrix{{Scalar(1)}};
  e.delbar[{0, 0}] = CMatrix{{Scalar(1)}};
  e.del[{0, -1}] = CMatrix{{Scalar(1)}};
  e.delbar[{-1, 0}] = CMatrix{{Scalar(1)}};
  for (auto [bd, k] : e.dims) e.sigma[bd] = CMatrix{{Scalar(1)}};
  e.sigma[{-1, -1}] = CMatrix{{Scalar(-1)}};  // conj(dt ^ dtbar) = -dt ^ dtbar
  CHECK(has_kind(validate_dolbeault(e), "del-delbar-anticommute"));
  e.delbar[{-1, 0}] = CMatrix{{Scalar(-1)}};
  CHECK(validate_dolbeault(e).empty());
  e.delbar[{0, 0}] = CMatrix{{Scalar(2)}};
  CHECK(has_kind(validate_dolbeault(e), "sigma-intertwines-del"));
}

TEST_CASE("real subspaces have real dimension dim_C") {
  for (const auto& name : kahler_model_names()) {
    const BigradedComplex a = kahler_model(name).algebra.complex;
    const auto [lo, hi] = a.degree_range();
    for (int n = lo; n <= hi; ++n)
      for (int p = -2; p <= 2; ++p)
        CHECK(real_subspace_internal(a, n, p).dim() == a.degree_dim(n));
  }
  const BigradedComplex j = jet_model(3).algebra.complex;
  CHECK(real_subspace(j, 1, 0).dim() == j.degree_dim(-1));
}

TEST_CASE("Hodge filtration in the declared grading") {
  const BigradedComplex p1 = kahler_model("P1").algebra.complex;
  CHECK(hodge_filtration(p1, 1, 2).dim() == 1);
  CHECK(hodge_filtration(p1, 2, 2).dim() == 0);
  CHECK(hodge_filtration(p1, 0, 0).dim() == 1);
  CHECK(hodge_filtration(p1, 1, 0).dim() == 0);
  const BigradedComplex ell = kahler_model("elliptic").algebra.complex;
  CHECK(hodge_filtration(ell, 1, 1).dim() == 1);
  CHECK(hodge_filtration(ell, 0, 1).dim() == 2);
}

TEST_CASE("pi_p is the projection onto the twisted real part") {
  const BigradedComplex e = kahler_model("elliptic").algebra.complex;
  for (int p = 0; p < 2; ++p) {
    const QMatrix pi = e.real_pi(-1, p);
    CHECK(pi * pi == pi);
    CHECK(image_basis(pi).cols() == real_subspace_internal(e, -1, p).dim());
  }
}

TEST_CASE("delbar cohomology of jets: holomorphic polynomials") {
  for (int N = 1; N <= 5; ++N) {
    const BigradedComplex j = jet_model(N).algebra.complex;
    // oracle: monomials t^a with a <= N
    CHECK(delbar_cohomology_dim(j, {0, 0}) == static_cast<std::size_t>(N + 1));
    // polynomial Dolbeault lemma in positive form degree
    CHECK(delbar_cohomology_dim(j, {0, 1}) == 0);
  }
}

TEST_CASE("map validation") {
  const BigradedComplex a = kahler_model("P1").algebra.complex;
  BigradedMap id;
  for (auto [bd, k] : a.dims) id.blocks[bd] = CMatrix::identity(static_cast<std::size_t>(k));
  CHECK(validate_map(a, a, id).empty());
  id.blocks[{0, 0}] = CMatrix{{Scalar::i()}};
  CHECK(has_kind(validate_map(a, a, id), "map-sigma"));
}
