#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>

#include "ctop/codiagram.hpp"
#include "ctop/spaces.hpp"
#include "oracle.hpp"

using namespace ctop;

namespace {

using Names = std::vector<std::string>;
using NameFacets = std::vector<std::vector<std::string>>;

Vec randomVec(std::mt19937& g, Ring r, std::size_t n) {
  Vec v(r, n);
  for (std::size_t i = 0; i < n; ++i)
    if (g() & 1u) v.set(i, r == Ring::F2 ? 1L : static_cast<long>(g() % 5) - 2);
  return v;
}

SimplicialMap inclusion(const SimplicialComplex& a, const SimplicialComplex& b) {
  std::map<std::string, std::string> m;
  for (const auto& l : a.labels()) m[l] = l;
  return SimplicialMap::fromLabels(a, b, m);
}

CupIAlgebra::Evaluator cupEval(const SimplicialComplex& k) {
  return [k](int i, int p, const Vec& a, int q, const Vec& b) {
    int m = p + q - i;
    if (m < 0 || m > k.dimension()) return Vec(Ring::F2, 0);
    return cupI(k, p, a, q, b, i);
  };
}

// cover of K by closed subcomplexes; object alpha = cochains of the intersection
CubicalCodiagram coverDiagram(const SimplicialComplex& k, const std::vector<std::vector<Simplex>>& pieces) {
  int n = static_cast<int>(pieces.size()) - 1;
  CubicalCodiagram d(Ring::F2, n);
  std::map<unsigned, SimplicialComplex> sub;
  for (unsigned a : CubicalCodiagram::subsets(n)) {
    std::set<Simplex> common;
    bool first = true;
    for (int i = 0; i <= n; ++i) {
      if (!(a & (1u << i))) continue;
      auto c = subcomplexOf(k, pieces[i]);
      std::set<Simplex> all;
      for (int dd = 0; dd <= c.dimension(); ++dd)
        for (const auto& s : c.simplices(dd)) all.insert(s);
      if (first) common = all, first = false;
      else {
        std::set<Simplex> keep;
        for (const auto& s : common)
          if (all.count(s)) keep.insert(s);
        common = keep;
      }
    }
    std::vector<int> used;
    for (const auto& s : common)
      for (int v : s) used.push_back(v);
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());
    Names labels;
    for (int v : used) labels.push_back(k.labels()[v]);
    NameFacets fs;
    for (const auto& s : common) {
      std::vector<std::string> f;
      for (int v : s) f.push_back(k.labels()[v]);
      fs.push_back(f);
    }
    sub[a] = SimplicialComplex::fromFacets(labels, fs);
    d.setObject(a, cochains(sub[a], Ring::F2), cupEval(sub[a]));
  }
  for (unsigned a : CubicalCodiagram::subsets(n))
    for (int i = 0; i <= n; ++i)
      if (!(a & (1u << i))) d.setArrow(a, a | (1u << i), pullback(inclusion(sub[a | (1u << i)], sub[a]), Ring::F2));
  return d;
}

// two-arc cover of the hollow triangle: U0 = path a-b-c, U1 = edge c-a, U0 cap U1 = {a, c}
CubicalCodiagram triangleCover(Ring r) {
  auto u0 = SimplicialComplex::fromFacets(Names{"a", "b", "c"}, NameFacets{{"a", "b"}, {"b", "c"}});
  auto u1 = SimplicialComplex::fromFacets(Names{"a", "c"}, NameFacets{{"a", "c"}});
  auto u01 = SimplicialComplex::fromFacets(Names{"a", "c"}, NameFacets{{"a"}, {"c"}});
  CubicalCodiagram d(r, 1);
  d.setObject(0b01, cochains(u0, r), r == Ring::F2 ? cupEval(u0) : CupIAlgebra::Evaluator{});
  d.setObject(0b10, cochains(u1, r), r == Ring::F2 ? cupEval(u1) : CupIAlgebra::Evaluator{});
  d.setObject(0b11, cochains(u01, r), r == Ring::F2 ? cupEval(u01) : CupIAlgebra::Evaluator{});
  d.setArrow(0b01, 0b11, pullback(inclusion(u01, u0), r));
  d.setArrow(0b10, 0b11, pullback(inclusion(u01, u1), r));
  return d;
}

std::map<int, std::size_t> hdims(const CochainComplex& c) {
  auto d = Cohomology(c).dims();
  std::map<int, std::size_t> out;
  for (auto [n, k] : d)
    if (k) out[n] = k;
  return out;
}

// Leibniz for cup_1 and cup_0 over F2 on random pairs
int leibnizFailures(const Normalization& n, int pairs, unsigned seed) {
  std::mt19937 g(seed);
  const auto& c = n.total();
  int bad = 0;
  for (int it = 0; it < pairs; ++it) {
    int a = c.lo() + static_cast<int>(g() % (c.hi() - c.lo() + 1));
    int b = c.lo() + static_cast<int>(g() % (c.hi() - c.lo() + 1));
    for (int l = 0; l <= 2; ++l) {
      Vec x = randomVec(g, Ring::F2, c.dim(a)), y = randomVec(g, Ring::F2, c.dim(b));
      Vec lhs = c.applyD(a + b - l, n.cupL(a, x, b, y, l));
      Vec rhs = n.cupL(a + 1, c.applyD(a, x), b, y, l) + n.cupL(a, x, b + 1, c.applyD(b, y), l);
      if (l > 0) rhs += n.cupL(a, x, b, y, l - 1) + n.cupL(b, y, a, x, l - 1);
      if (lhs.size() != rhs.size() || lhs != rhs) ++bad;
    }
  }
  return bad;
}

}  // namespace

TEST_CASE("normalization of small diagrams") {
  SUBCASE("constant one-object diagram") {
    auto k = spaces::projectivePlane();
    CubicalCodiagram d(Ring::F2, 0);
    d.setObject(1, cochains(k, Ring::F2));
    auto n = normalize(d);
    CHECK(hdims(n.total()) == hdims(cochains(k, Ring::F2)));
    CHECK(n.total().dim(1) == 15);
  }
  SUBCASE("two-arc cover gives the circle") {
    for (Ring r : {Ring::F2, Ring::Q}) {
      auto n = normalize(triangleCover(r));
      auto b = oracle::betti({{0, 1}, {1, 2}, {0, 2}}, r == Ring::Q);
      std::map<int, std::size_t> want;
      for (std::size_t i = 0; i < b.size(); ++i)
        if (b[i]) want[static_cast<int>(i)] = b[i];
      CHECK(hdims(n.total()) == want);
      for (int t = n.total().lo(); t + 1 < n.total().hi(); ++t)
        CHECK((n.total().d(t + 1) * n.total().d(t)).isZero());
    }
  }
  SUBCASE("acyclic objects") {
    // A^0 = A^1 = A^01 = F2 -> F2 (identity d), unit arrows
    Matrix one = Matrix::identity(Ring::F2, 1);
    auto acyc = CochainComplex::build(Ring::F2, 0, {1, 1}, {one});
    CubicalCodiagram d(Ring::F2, 1);
    for (unsigned a : {1u, 2u, 3u}) d.setObject(a, acyc);
    d.setArrow(1, 3, ChainMap::identity(acyc));
    d.setArrow(2, 3, ChainMap::identity(acyc));
    CHECK(hdims(normalize(d).total()).empty());
  }
  SUBCASE("non-commuting square") {
    auto pt = cochains(spaces::point(), Ring::F2);
    CubicalCodiagram d(Ring::F2, 1);
    for (unsigned a = 1; a < 4; ++a) d.setObject(a, pt);
    d.setArrow(1, 3, ChainMap::identity(pt));
    CHECK_THROWS_AS(normalize(d), Error);
    CubicalCodiagram e(Ring::F2, 1);
    for (unsigned a = 1; a < 8; ++a) (void)a;
    CubicalCodiagram sq(Ring::F2, 2);
    for (unsigned a : CubicalCodiagram::subsets(2)) sq.setObject(a, pt);
    for (unsigned a : CubicalCodiagram::subsets(2))
      for (int i = 0; i < 3; ++i)
        if (!(a & (1u << i))) sq.setArrow(a, a | (1u << i), ChainMap(pt, pt));
    sq.setArrow(1, 3, ChainMap::identity(pt));
    sq.setArrow(3, 7, ChainMap::identity(pt));
    try {
      sq.checkFunctorial();
      CHECK(false);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NotFunctorial);
      CHECK(e.where() == "0->012");
    }
  }
}

TEST_CASE("poset normalization") {
  auto f2 = cochains(spaces::point(), Ring::F2);
  SUBCASE("a < b with the identity") {
    PosetDiagram p(Ring::F2, {"a", "b"}, {{0, 1}});
    p.setObject(0, f2);
    p.setObject(1, f2);
    p.setArrow(0, 1, ChainMap::identity(f2));
    auto n = normalizePoset(p);
    CHECK(hdims(n.total()) == std::map<int, std::size_t>{{0, 1}});
  }
  SUBCASE("face poset of an edge") {
    // vertices u, v below the edge e
    PosetDiagram p(Ring::F2, {"u", "v", "e"}, {{0, 2}, {1, 2}});
    for (int x = 0; x < 3; ++x) p.setObject(x, f2);
    p.setArrow(0, 2, ChainMap::identity(f2));
    p.setArrow(1, 2, ChainMap::identity(f2));
    CHECK(hdims(normalizePoset(p).total()) == std::map<int, std::size_t>{{0, 1}});
  }
  SUBCASE("face poset of the hollow triangle, constant coefficients") {
    // order complex of the face poset is the barycentric subdivision
    PosetDiagram p(Ring::Q, {"0", "1", "2", "01", "12", "02"}, {{0, 3}, {1, 3}, {1, 4}, {2, 4}, {0, 5}, {2, 5}});
    auto q = cochains(spaces::point(), Ring::Q);
    for (int x = 0; x < 6; ++x) p.setObject(x, q);
    for (auto [x, y] : std::vector<std::pair<int, int>>{{0, 3}, {1, 3}, {1, 4}, {2, 4}, {0, 5}, {2, 5}})
      p.setArrow(x, y, ChainMap::identity(q));
    CHECK(hdims(normalizePoset(p).total()) == std::map<int, std::size_t>{{0, 1}, {1, 1}});
  }
  SUBCASE("minimum element") {
    auto k = spaces::torus();
    auto c = cochains(k, Ring::F2);
    PosetDiagram p(Ring::F2, {"m", "x", "y"}, {{0, 1}, {0, 2}});
    for (int x = 0; x < 3; ++x) p.setObject(x, c);
    p.setArrow(0, 1, ChainMap::identity(c));
    p.setArrow(0, 2, ChainMap::identity(c));
    CHECK(hdims(normalizePoset(p).total()) == hdims(c));
  }
}

TEST_CASE("cup_l on normalizations") {
  auto d = triangleCover(Ring::F2);
  auto n = normalize(d);
  CHECK(leibnizFailures(n, 100, 7) == 0);
  auto alg = n.algebra();
  auto rep = checkNice(alg, 50, 3);
  CHECK(rep.nice());

  // sphere as the union of three closed pieces; cup_1 and cup_2 live on every layer
  auto s2 = spaces::sphere(2);
  auto cov = coverDiagram(s2, {{{0, 1, 2}, {0, 1, 3}}, {{0, 2, 3}}, {{1, 2, 3}, {0, 2, 3}}});
  auto n3 = normalize(cov);
  CHECK(hdims(n3.total()) == std::map<int, std::size_t>{{0, 1}, {2, 1}});
  CHECK(leibnizFailures(n3, 150, 11) == 0);
}

// ---------------------------------------------------------------- filtered diagrams

#include "diagrams.hpp"
#include "random_filtered.hpp"

using diag::blockMap;
using diag::filteredSum;

TEST_CASE("E1 of the diagonal filtration matches the end formula") {
  // A^0 = R + S -> A^01 = R + T <- A^1 = T, by projection/inclusion
  std::mt19937 g(2024);
  int diagrams = 0;
  for (int it = 0; it < 25; ++it) {
    Ring ring = it % 2 ? Ring::Q : Ring::F2;
    auto R = rf::randomInstance(g, ring, 3, 3, 3);
    auto S = rf::randomInstance(g, ring, 3, 3, 3);
    auto T = rf::randomInstance(g, ring, 3, 3, 3);
    auto A0 = filteredSum(R.fc, S.fc), A01 = filteredSum(R.fc, T.fc);
    CubicalCodiagram d(ring, 1);
    d.setFiltration(1, A0);
    d.setFiltration(2, T.fc);
    d.setFiltration(3, A01);
    std::vector<const CochainComplex*> rs{&R.fc.complex(), &S.fc.complex()}, rt{&R.fc.complex(), &T.fc.complex()},
        t{&T.fc.complex()};
    d.setArrow(1, 3, blockMap(rs, 0, rt, 0, A0.complex(), A01.complex()));
    d.setArrow(2, 3, blockMap(t, 0, rt, 1, T.fc.complex(), A01.complex()));
    auto n = normalize(d);
    SpectralSequence ss(normalizeSigma(d, n));
    // object alpha contributes E1^{p-m,q}(A^alpha), m = |alpha| - 1
    auto end = [&](int p, int q) {
      std::size_t c = 0;
      c += R.dim(1, p, q) + S.dim(1, p, q);       // alpha = {0}
      c += T.dim(1, p, q);                        // alpha = {1}
      c += R.dim(1, p - 1, q) + T.dim(1, p - 1, q);  // alpha = {0,1}
      return c;
    };
    bool ok = true;
    for (int p = -8; p <= 8; ++p)
      for (int q = -8; q <= 8; ++q)
        if (ss.dim(1, p, q) != end(p, q)) ok = false;
    CHECK(ok);
    CHECK(verifySpectralSequence(ss).ok());
    ++diagrams;
  }
  CHECK(diagrams == 25);
}

TEST_CASE("trivially filtered diagram gives the column filtration") {
  auto d = triangleCover(Ring::F2);
  for (unsigned a : {1u, 2u, 3u}) d.setFiltration(a, trivialFiltration(d.object(a)));
  auto n = normalize(d);
  CHECK(isColumnFiltration(n, normalizeSigma(d, n)));
  // N^t keeps every piece at level 0
  auto t = normalizeT(d, n);
  CHECK(t.bottom() == 0);
  CHECK(t.top() == 0);
}

TEST_CASE("levelwise E1-isomorphism induces an E1-isomorphism") {
  // the identity of a two-object diagram into its sum with an acyclic filtered piece
  auto pt = cochains(spaces::point(), Ring::F2);
  Matrix one = Matrix::identity(Ring::F2, 1);
  auto acyc = CochainComplex::build(Ring::F2, 0, {1, 1}, {one});
  // x -> y both at level 0: Gr is acyclic
  auto fa = trivialFiltration(acyc);
  auto fp = trivialFiltration(pt);
  auto big = filteredSum(fp, fa);
  CubicalCodiagram a(Ring::F2, 0), b(Ring::F2, 0);
  a.setFiltration(1, fp);
  b.setFiltration(1, big);
  auto na = normalize(a), nb = normalize(b);
  std::vector<const CochainComplex*> src{&pt}, tgt{&pt, &acyc};
  auto f = blockMap(src, 0, tgt, 0, na.total(), nb.total());
  CHECK(checkErQuasiIso(f, normalizeSigma(a, na), normalizeSigma(b, nb), 0));
}
