#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fdeligne/chain.hpp"

using namespace fdeligne;

namespace {

// simplicial circle: three vertices, three edges
ChainComplex circle() {
  ChainComplex c;
  c.dims = {{0, 3}, {1, 3}};
  c.d[1] = QMatrix{{-1, 0, 1}, {1, -1, 0}, {0, 1, -1}};
  return c;
}

ChainComplex interval() {
  ChainComplex c;
  c.dims = {{0, 2}, {1, 1}};
  c.d[1] = QMatrix{{-1}, {1}};
  return c;
}

}  // namespace

TEST_CASE("betti numbers of a circle and an interval") {
  const auto b = betti(circle());
  CHECK(b.at(0) == 1);
  CHECK(b.at(1) == 1);
  const auto bi = betti(interval());
  CHECK(bi.at(0) == 1);
  CHECK(bi.at(1) == 0);
  CHECK(circle().is_complex());
}

TEST_CASE("square defects are reported") {
  ChainComplex c;
  c.dims = {{0, 1}, {1, 1}, {2, 1}};
  c.d[1] = QMatrix{{1}};
  c.d[2] = QMatrix{{1}};
  CHECK(c.square_defects() == std::vector<int>{2});
}

TEST_CASE("cone of the identity is acyclic") {
  const ChainComplex c = circle();
  ChainMap id;
  for (const auto& [n, k] : c.dims) id.f[n] = QMatrix::identity(k);
  const ChainComplex k = cone(c, c, id);
  CHECK(k.is_complex());
  for (const auto& [n, h] : betti(k)) CHECK(h == 0);
  CHECK(induced_rank(c, c, id, 1) == 1);
}

TEST_CASE("connecting map of interval rel boundary") {
  // 0 -> endpoints -> interval -> interval/endpoints -> 0
  ChainComplex a;
  a.dims = {{0, 2}};
  const ChainComplex b = interval();
  ChainComplex q;
  q.dims = {{1, 1}};
  ChainMap i, j;
  i.f[0] = QMatrix::identity(2);
  j.f[1] = QMatrix{{1}};
  j.f[0] = QMatrix(0, 2);
  CHECK(ses_defects(a, b, q, i, j).empty());
  // H_1(I, dI) = Q maps onto the reduced class [b] - [a]
  CHECK(connecting_rank(a, b, q, i, j, 1) == 1);
}

TEST_CASE("non-chain maps are caught") {
  const ChainComplex c = interval();
  ChainMap f;
  f.f[0] = QMatrix{{1, 0}, {0, 0}};
  f.f[1] = QMatrix{{1}};
  CHECK(chain_map_defects(c, c, f) == std::vector<int>{1});
}
