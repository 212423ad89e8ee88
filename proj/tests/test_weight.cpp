#include "doctest.h"

#include "ctop/spaces.hpp"
#include "ctop/weight.hpp"
#include "oracle.hpp"

using namespace ctop;

namespace {

std::map<std::pair<int, int>, std::size_t> pageDims(const SpectralSequence& ss, int r) {
  std::map<std::pair<int, int>, std::size_t> out;
  for (int p = ss.pMin(); p <= ss.pMax(); ++p)
    for (int n = ss.lo(); n <= ss.hi(); ++n)
      if (auto d = ss.dim(r, p, n - p)) out[{p, n - p}] = d;
  return out;
}

std::map<int, std::size_t> bettiMap(const SimplicialComplex& k, bool overQ) {
  std::vector<std::vector<int>> facets;
  for (const auto& f : k.facets()) facets.push_back(f);
  auto b = oracle::betti(facets, overQ);
  std::map<int, std::size_t> out;
  for (std::size_t i = 0; i < b.size(); ++i)
    if (b[i]) out[static_cast<int>(i)] = b[i];
  return out;
}

}  // namespace

TEST_CASE("nodal curve weight spectral sequence") {
  auto h = descriptors::nodalCurve();
  for (Ring r : {Ring::F2, Ring::Q}) {
    auto w = weightSS(h, r, false);
    using PQ = std::map<std::pair<int, int>, std::size_t>;
    CHECK(pageDims(w.ss, 1) == PQ{{{0, 0}, 2}, {{1, 0}, 2}, {{0, 2}, 1}});
    CHECK(pageDims(w.ss, 2) == PQ{{{0, 0}, 1}, {{1, 0}, 1}, {{0, 2}, 1}});
    CHECK(pageDims(w.ss, 1) == w.layerE1);
    CHECK(w.abutment == bettiMap(*h.target, r == Ring::Q));
    CHECK(verifySpectralSequence(w.ss).ok());
  }
}

TEST_CASE("acyclic square sequence") {
  auto sq = squareOfCube(descriptors::nodalCurve(), Ring::F2);
  auto rep = acyclicSquareCheck(sq.x, sq.xt, sq.y, sq.yt, sq.maps);
  CHECK(rep.exact);
  // blow-up of a point on the sphere: trivially exact
  HyperresolutionDescriptor blow;
  blow.n = 1;
  auto s2 = spaces::sphere(2);
  auto pt = spaces::point();
  blow.spaces = {{1, s2}, {2, pt}, {3, pt}};
  blow.maps[{1, 3}] = SimplicialMap(pt, s2, {0});
  blow.maps[{2, 3}] = SimplicialMap(pt, pt, {0});
  auto sb = squareOfCube(blow, Ring::F2);
  CHECK(acyclicSquareCheck(sb.x, sb.xt, sb.y, sb.yt, sb.maps).exact);
  // a comparison map that forgets X~ -> Y~ breaks the middle spot
  auto bad = sq.maps;
  bad.xtToYt = ChainMap(sq.xt.normalization.total(), sq.yt.normalization.total());
  auto r2 = acyclicSquareCheck(sq.x, sq.xt, sq.y, sq.yt, bad);
  CHECK_FALSE(r2.exact);
  REQUIRE_FALSE(r2.failures.empty());
  CHECK(r2.failures.front() == "middle (0,0)");
}

TEST_CASE("dual complex row") {
  auto h = descriptors::nodalCurve();
  auto w = weightSS(h, Ring::F2, false);
  auto rep = dualComplexRow(h, w);
  CHECK(rep.e2Row == std::map<int, std::size_t>{{0, 1}, {1, 1}});
  CHECK(rep.matchesUnreduced != rep.matchesReduced);
  CHECK(rep.matchesUnreduced);
  auto sm = descriptors::smooth(spaces::torus());
  auto ws = weightSS(sm, Ring::F2, false);
  auto rs = dualComplexRow(sm, ws);
  CHECK(rs.e2Row == std::map<int, std::size_t>{{0, 1}});
  auto two = descriptors::disjointSum(h, h);
  auto wt = weightSS(two, Ring::F2, false);
  CHECK(dualComplexRow(two, wt).e2Row == std::map<int, std::size_t>{{0, 2}, {1, 2}});
  HyperresolutionDescriptor none = h;
  none.dualComplex.reset();
  CHECK_THROWS_AS(dualComplexRow(none, w), Error);
}

TEST_CASE("smooth and disjoint descriptors") {
  auto k = spaces::projectivePlane();
  auto w = weightSS(descriptors::smooth(k), Ring::F2, false);
  CHECK(w.ss.stableAt() <= 1);
  CHECK(w.abutment == bettiMap(k, false));
  auto a = descriptors::nodalCurve();
  auto b = descriptors::nodalProjectivePlane();
  auto wa = weightSS(a, Ring::F2, false), wb = weightSS(b, Ring::F2, false);
  auto ws = weightSS(descriptors::disjointSum(a, b), Ring::F2, false);
  for (int r = 1; r <= 3; ++r) {
    auto da = pageDims(wa.ss, r), db = pageDims(wb.ss, r), ds = pageDims(ws.ss, r);
    for (auto [k2, d] : db) da[k2] += d;
    CHECK(ds == da);
  }
}

TEST_CASE("broken descriptor") {
  auto h = descriptors::nodalCurve();
  h.maps.erase({2, 3});
  CHECK_THROWS_AS(weightSS(h, Ring::F2), Error);
}

TEST_CASE("page Steenrod operations") {
  for (auto h : {descriptors::nodalCurve(), descriptors::nodalProjectivePlane(), descriptors::nodalGenusTwo()}) {
    auto w = weightSS(h, Ring::F2, true);
    const auto& n = w.normalization;
    for (const auto& [rs, ops] : w.steenrod) {
      auto [r, s] = rs;
      for (const auto& op : ops) {
        CHECK(op.outOfRangeZero);
        int k = op.p + op.q;
        for (int c : op.columns) {
          CHECK(c >= op.p);
          CHECK(c <= 2 * op.p);
          CHECK(2 * op.p - c <= k - s);
        }
        // independent of the representative
        for (std::size_t j = 0; j < w.ss.dim(r, op.p, op.q); ++j) {
          Vec x = pageRepresentative(n, w.ss, r, op.p, op.q, j);
          Vec base = pageSteenrodOn(n, w.ss, s, r, op.p, op.q, x);
          CHECK(base == op.matrix.column(j));
          for (unsigned seed = 1; seed <= 5; ++seed) {
            Vec y = perturbRepresentative(w.ss, r, op.p, op.q, x, seed * 31 + j);
            REQUIRE(w.ss.classOf(r, op.p, op.q, y) == w.ss.classOf(r, op.p, op.q, x));
            CHECK(pageSteenrodOn(n, w.ss, s, r, op.p, op.q, y) == base);
          }
          // Sq^0 is the identity on the bottom row
          if (s == 0 && op.q == 0) CHECK(base == Vec::unit(Ring::F2, w.ss.dim(r, op.p, op.q), j));
        }
      }
    }
  }
}

TEST_CASE("P^s commutes with d_1") {
  auto w = weightSS(descriptors::nodalProjectivePlane(), Ring::F2, true);
  for (int s = 0; s <= 2; ++s) {
    std::map<std::pair<int, int>, Matrix> m;
    for (const auto& op : w.steenrod.at({1, s})) m[{op.p, op.q}] = op.matrix;
    for (const auto& [pq, mat] : m) {
      auto [p, q] = pq;
      Matrix d1 = w.ss.d(1, p, q);
      int tp = p - q + s, tq = 2 * q;
      auto next = m.find({p + 1, q});
      Matrix lhs = next == m.end() ? Matrix(Ring::F2, w.ss.dim(1, tp + 1, tq), d1.cols()) : next->second * d1;
      Matrix rhs = w.ss.d(1, tp, tq) * mat;
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("top operation and the q = 0 row") {
  auto w = weightSS(descriptors::nodalProjectivePlane(), Ring::F2, true);
  const auto& n = w.normalization;
  // Sq^1 on E2^{0,1}: the cup square of the generator of H^1(RP^2) is nonzero
  bool found = false;
  for (const auto& op : w.steenrod.at({2, 1}))
    if (op.p == 0 && op.q == 1) {
      CHECK(op.tp == 0);
      CHECK(op.tq == 2);
      CHECK_FALSE(op.matrix.isZero());
      found = true;
      for (std::size_t j = 0; j < w.ss.dim(2, 0, 1); ++j) {
        Vec x = pageRepresentative(n, w.ss, 2, 0, 1, j);
        Vec sqr = n.cupL(1, x, 1, x, 0);
        CHECK(w.ss.classOf(2, 0, 2, sqr) == op.matrix.column(j));
      }
    }
  CHECK(found);
  // q = 0 row: Sq^s lands in E2^{p+s,0}
  for (int s = 0; s <= 1; ++s)
    for (const auto& op : w.steenrod.at({2, s}))
      if (op.q == 0) {
        CHECK(op.tp == op.p + s);
        CHECK(op.tq == 0);
      }
}
