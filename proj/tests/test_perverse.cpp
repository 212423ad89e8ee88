#include "doctest.h"

#include <random>

#include "ctop/perverse.hpp"
#include "ctop/spaces.hpp"
#include "ctop/simplicial.hpp"

using namespace ctop;

namespace {

Perversity P(int n, std::vector<int> v) { return Perversity::make(n, std::move(v)); }

std::map<int, std::size_t> hdims(const CochainComplex& c) {
  std::map<int, std::size_t> out;
  for (auto [k, d] : Cohomology(c).dims())
    if (d) out[k] = d;
  return out;
}

}  // namespace

TEST_CASE("perversity validation") {
  CHECK(P(4, {0, 1, 2}) == Perversity::top(4));
  CHECK(P(3, {0, 0}) == Perversity::zero(3));
  try {
    P(4, {0, 2, 2});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidPerversity);
    CHECK(e.where() == "3");
  }
  CHECK_THROWS_AS(P(3, {1, 1}), Error);
  CHECK_THROWS_AS(P(3, {0, 1, 1}), Error);
  CHECK(enumeratePerversities(4).size() == 5);
  CHECK(enumeratePerversities(6).size() == 17);
  CHECK(enumeratePerversities(6).back().isInfinite());
}

TEST_CASE("oplus laws and worked values") {
  CHECK(oplus(P(4, {0, 0, 1}), P(4, {0, 1, 1})) == P(4, {0, 1, 2}));
  CHECK(oplus(P(4, {0, 1, 1}), P(4, {0, 1, 2})).isInfinite());
  for (int n = 2; n <= 6; ++n) {
    const auto& all = enumeratePerversities(n);
    auto z = Perversity::zero(n);
    for (const auto& p : all) {
      CHECK(oplus(z, p) == p);
      CHECK(oplus(p, z) == p);
      CHECK(goreskyDoubleFinite(p) == !oplus(p, p).isInfinite());
      for (const auto& q : all) {
        CHECK(oplus(p, q) == oplus(q, p));
        CHECK(oplus(p, q) == oplusBruteForce(p, q));
        for (const auto& r : all) {
          CHECK(oplus(oplus(p, q), r) == oplus(p, oplus(q, r)));
          if (p.leq(r)) CHECK(oplus(p, q).leq(oplus(r, q)));
        }
      }
    }
  }
}

TEST_CASE("L(p,s)") {
  for (int n = 2; n <= 6; ++n)
    for (const auto& p : enumeratePerversities(n)) {
      if (p.isInfinite()) continue;
      CHECK(lPerversity(p, 0) == p);
      if (goreskyDoubleFinite(p)) CHECK(lPerversity(p, 100) == oplus(p, p));
      for (int s = 0; s <= n; ++s) {
        auto l = lPerversity(p, s);
        CHECK(p.leq(l));
        if (!l.isInfinite())
          for (int k = 2; k <= n; ++k) CHECK(l(k) >= std::min(2 * p(k), p(k) + s));
      }
    }
  CHECK(lPerversity(Perversity::zero(5), 3) == Perversity::zero(5));
  CHECK(lPerversity(Perversity::top(4), 1).isInfinite());
}

TEST_CASE("truncation") {
  auto c = cochains(spaces::projectivePlane(), Ring::F2);
  CHECK(hdims(truncate(c, 0).complex) == std::map<int, std::size_t>{{0, 1}});
  CHECK(hdims(truncate(c, 5).complex) == hdims(c));
  CHECK(truncate(c, -1).complex.totalDim() == 0);
  std::mt19937 g(5);
  auto t = cochains(spaces::torus(), Ring::Q);
  for (int k = -1; k <= 3; ++k)
    for (int k2 = -1; k2 <= 3; ++k2) {
      auto a = truncate(t, k);
      auto b = truncate(a.complex, k2);
      auto m = truncate(t, std::min(k, k2));
      CHECK(hdims(b.complex) == hdims(m.complex));
      CHECK(b.complex.totalDim() == m.complex.totalDim());
    }
  for (int k = 0; k <= 2; ++k) {
    auto tr = truncate(t, k);
    auto full = hdims(t);
    auto th = hdims(tr.complex);
    for (auto [i, d] : full)
      CHECK(th[i] == (i <= k ? d : 0));
    // the inclusion is an isomorphism in degrees <= k
    auto ind = inducedMap(tr.inclusion, tr.complex, t);
    for (auto& [i, m] : ind)
      if (i <= k) CHECK(rank(m) == full[i]);
  }
}

TEST_CASE("perverse truncation and tensor") {
  int n = 3;
  auto t2 = cochains(spaces::torus(), Ring::F2);
  auto a = constantPerverse(n, t2);
  auto tr = truncatePerverse(a, 3);
  tr.checkFunctorial();
  CHECK(hdims(tr.at(Perversity::zero(3))) == std::map<int, std::size_t>{{0, 1}});
  CHECK(hdims(tr.at(Perversity::top(3))) == std::map<int, std::size_t>{{0, 1}, {1, 2}});
  CHECK(hdims(tr.at(Perversity::infinity(3))) == hdims(t2));
  auto tr2 = truncatePerverse(tr, 3);
  for (const auto& p : enumeratePerversities(n)) CHECK(tr2.at(p).totalDim() == tr.at(p).totalDim());

  for (int dim = 3; dim <= 5; ++dim) {
    const auto& all = enumeratePerversities(dim);
    auto unit = tPerverse(Perversity::zero(dim), Ring::F2);
    auto aa = constantPerverse(dim, cochains(spaces::hollowTriangle(), Ring::F2));
    auto prod = perverseTensor(aa, unit);
    prod.checkFunctorial();
    for (const auto& p : all) CHECK(prod.at(p).totalDim() == aa.at(p).totalDim());
    for (const auto& p : all)
      for (const auto& q : all) {
        auto tt = perverseTensor(tPerverse(p, Ring::F2), tPerverse(q, Ring::F2));
        auto pq = oplus(p, q);
        for (const auto& r : all) CHECK(tt.at(r).totalDim() == (pq.leq(r) ? 1u : 0u));
      }
  }
}
