#include "ctop/weight.hpp"

#include "ctop/spaces.hpp"

namespace ctop {

namespace {

std::string pq(int p, int q) { return "(" + std::to_string(p) + "," + std::to_string(q) + ")"; }

CupIAlgebra::Evaluator cupOn(const SimplicialComplex& k) {
  return [k](int i, int p, const Vec& a, int q, const Vec& b) {
    int m = p + q - i;
    if (m < 0 || m > k.dimension() || p < 0 || q < 0 || p > k.dimension() || q > k.dimension())
      return Vec(Ring::F2, 0);
    return cupI(k, p, a, q, b, i);
  };
}

std::map<int, std::size_t> nonzeroDims(const Cohomology& h) {
  std::map<int, std::size_t> out;
  for (auto [n, d] : h.dims())
    if (d) out[n] = d;
  return out;
}

}  // namespace

void HyperresolutionDescriptor::validate() {
  warnings.clear();
  for (unsigned a : CubicalCodiagram::subsets(n))
    if (!spaces.count(a)) throw Error(ErrorKind::NotFunctorial, "missing space", CubicalCodiagram::subsetName(a));
  for (unsigned a : CubicalCodiagram::subsets(n))
    for (int i = 0; i <= n; ++i) {
      unsigned b = a | (1u << i);
      if (b == a) continue;
      auto it = maps.find({a, b});
      std::string where = CubicalCodiagram::subsetName(a) + "<" + CubicalCodiagram::subsetName(b);
      if (it == maps.end()) throw Error(ErrorKind::NotFunctorial, "missing map", where);
      if (!(it->second.source() == spaces.at(b)) || !(it->second.target() == spaces.at(a)))
        throw Error(ErrorKind::NotFunctorial, "map does not connect the listed spaces", where);
      if (spaces.at(b).dimension() > spaces.at(a).dimension())
        warnings.push_back("dimension grows along " + where);
    }
  for (unsigned a : CubicalCodiagram::subsets(n))
    for (int i = 0; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) {
        unsigned bi = 1u << i, bj = 1u << j;
        if ((a & bi) || (a & bj)) continue;
        unsigned c = a | bi | bj;
        auto g1 = compose(maps.at({a, a | bi}), maps.at({a | bi, c}));
        auto g2 = compose(maps.at({a, a | bj}), maps.at({a | bj, c}));
        if (g1.vertexMap() != g2.vertexMap())
          throw Error(ErrorKind::NotFunctorial, "square of maps does not commute",
                      CubicalCodiagram::subsetName(a) + "<" + CubicalCodiagram::subsetName(c));
      }
}

CubicalCodiagram cochainCodiagram(const HyperresolutionDescriptor& h, Ring ring) {
  CubicalCodiagram d(ring, h.n);
  for (const auto& [a, k] : h.spaces) {
    d.setObject(a, cochains(k, ring), ring == Ring::F2 ? cupOn(k) : CupIAlgebra::Evaluator{});
    d.setFiltration(a, trivialFiltration(d.object(a)));
  }
  for (const auto& [ab, f] : h.maps) d.setArrow(ab.first, ab.second, pullback(f, ring));
  return d;
}

WeightPages weightSS(const HyperresolutionDescriptor& hin, Ring ring, bool withSteenrod) {
  HyperresolutionDescriptor h = hin;
  h.validate();
  auto cube = cochainCodiagram(h, ring);
  WeightPages out;
  out.ring = ring;
  out.normalization = normalize(cube);
  out.ss = SpectralSequence(normalizeSigma(cube, out.normalization));
  out.abutment = nonzeroDims(Cohomology(out.normalization.total()));
  for (const auto& [a, k] : h.spaces) {
    int p = __builtin_popcount(a) - 1;
    for (auto [q, d] : nonzeroDims(Cohomology(cochains(k, ring)))) out.layerE1[{p, q}] += d;
  }
  if (withSteenrod && ring == Ring::F2) {
    const auto& tot = out.normalization.total();
    for (int r = 1; r <= 2; ++r)
      for (int s = 0; s <= tot.hi(); ++s)
        out.steenrod[{r, s}] = pageSteenrod(out.normalization, out.ss, s, r);
  }
  return out;
}

ExactnessReport acyclicSquareCheck(const WeightPages& x, const WeightPages& xt, const WeightPages& y,
                                   const WeightPages& yt, const SquareMaps& maps) {
  Ring ring = x.ring;
  for (const auto* w : {&xt, &y, &yt})
    if (w->ring != ring) throw Error(ErrorKind::IncompatibleDiagrams, "pages over different rings");
  auto check = [](const ChainMap& f, const WeightPages& a, const WeightPages& b, const char* name) {
    if (!isFilteredMap(f, a.ss.filtered(), b.ss.filtered()))
      throw Error(ErrorKind::IncompatibleDiagrams, "comparison map is not a filtered cochain map", name);
  };
  check(maps.xToXt, x, xt, "X->Xt");
  check(maps.xToY, x, y, "X->Y");
  check(maps.xtToYt, xt, yt, "Xt->Yt");
  check(maps.yToYt, y, yt, "Y->Yt");
  auto a1 = pageMap(maps.xToXt, x.ss, xt.ss, 2);
  auto a2 = pageMap(maps.xToY, x.ss, y.ss, 2);
  auto b1 = pageMap(maps.xtToYt, xt.ss, yt.ss, 2);
  auto b2 = pageMap(maps.yToYt, y.ss, yt.ss, 2);
  auto get = [](const std::map<std::pair<int, int>, Matrix>& m, int p, int q, Ring r, std::size_t rows, std::size_t cols) {
    auto it = m.find({p, q});
    return it == m.end() ? Matrix(r, rows, cols) : it->second;
  };
  ExactnessReport rep;
  int pmin = std::min({x.ss.pMin(), xt.ss.pMin(), y.ss.pMin(), yt.ss.pMin()});
  int pmax = std::max({x.ss.pMax(), xt.ss.pMax(), y.ss.pMax(), yt.ss.pMax()});
  int lo = std::min({x.ss.lo(), xt.ss.lo(), y.ss.lo(), yt.ss.lo()});
  int hi = std::max({x.ss.hi(), xt.ss.hi(), y.ss.hi(), yt.ss.hi()});
  struct Spot {
    std::size_t rankA = 0, rankB = 0, dx = 0, dmid = 0, dyt = 0;
  };
  std::map<std::pair<int, int>, Spot> spots;
  for (int p = pmin - 1; p <= pmax + 1; ++p)
    for (int q = lo - pmax - 1; q <= hi - pmin + 1; ++q) {
      Spot s;
      s.dx = x.ss.dim(2, p, q);
      std::size_t dxt = xt.ss.dim(2, p, q), dy = y.ss.dim(2, p, q);
      s.dmid = dxt + dy;
      s.dyt = yt.ss.dim(2, p, q);
      Matrix m1 = get(a1, p, q, ring, dxt, s.dx), m2 = get(a2, p, q, ring, dy, s.dx);
      Matrix n1 = get(b1, p, q, ring, s.dyt, dxt), n2 = get(b2, p, q, ring, s.dyt, dy);
      // alpha = (m1; m2), beta = (n1, -n2)
      Matrix alpha(ring, s.dmid, s.dx), beta(ring, s.dyt, s.dmid);
      for (std::size_t i = 0; i < dxt; ++i)
        for (std::size_t j = 0; j < s.dx; ++j) alpha.set(i, j, m1.get(i, j));
      for (std::size_t i = 0; i < dy; ++i)
        for (std::size_t j = 0; j < s.dx; ++j) alpha.set(dxt + i, j, m2.get(i, j));
      for (std::size_t i = 0; i < s.dyt; ++i) {
        for (std::size_t j = 0; j < dxt; ++j) beta.set(i, j, n1.get(i, j));
        for (std::size_t j = 0; j < dy; ++j) beta.set(i, dxt + j, -n2.get(i, j));
      }
      s.rankA = rank(alpha);
      s.rankB = rank(beta);
      if (s.dx + s.dmid + s.dyt > 0) {
        if (!(beta * alpha).isZero() || s.rankA + s.rankB != s.dmid) {
          rep.exact = false;
          rep.failures.push_back("middle " + pq(p, q));
        }
      }
      spots[{p, q}] = s;
    }
  // connecting spot: coker beta at (p,q) must match ker alpha at (p+1,q)
  for (const auto& [k, s] : spots) {
    auto next = spots.find({k.first + 1, k.second});
    std::size_t kerNext = next == spots.end() ? 0 : next->second.dx - next->second.rankA;
    if (s.dyt - s.rankB != kerNext) {
      rep.exact = false;
      rep.failures.push_back("connecting " + pq(k.first, k.second));
    }
  }
  return rep;
}

CubeSquare squareOfCube(const HyperresolutionDescriptor& h, Ring ring) {
  if (h.n != 1) throw Error(ErrorKind::IncompatibleDiagrams, "an acyclic square needs a one-step cube");
  CubeSquare out;
  out.x = weightSS(h, ring, false);
  out.xt = weightSS(descriptors::smooth(h.spaces.at(1)), ring, false);
  out.y = weightSS(descriptors::smooth(h.spaces.at(2)), ring, false);
  out.yt = weightSS(descriptors::smooth(h.spaces.at(3)), ring, false);
  const auto& nx = out.x.normalization;
  auto project = [&](const Simplex& cell, const CochainComplex& tgt) {
    std::size_t c = nx.diagram().cellOf(cell);
    std::vector<Matrix> parts;
    const auto& tot = nx.total();
    int lo = std::min(tot.lo(), tgt.lo()), hi = std::max(tot.hi(), tgt.hi());
    for (int t = lo; t <= hi; ++t) {
      Matrix m(ring, tgt.dim(t), tot.dim(t));
      if (auto off = nx.offset(t, c))
        for (std::size_t i = 0; i < tgt.dim(t); ++i) m.set(i, *off + i, 1L);
      parts.push_back(std::move(m));
    }
    return ChainMap::fromParts(ring, lo, parts);
  };
  out.maps.xToXt = project({0}, out.xt.normalization.total());
  out.maps.xToY = project({1}, out.y.normalization.total());
  out.maps.xtToYt = pullback(h.maps.at({1, 3}), ring);
  out.maps.yToYt = pullback(h.maps.at({2, 3}), ring);
  return out;
}

DualComplexReport dualComplexRow(const HyperresolutionDescriptor& h, const WeightPages& pages) {
  if (!h.dualComplex) throw Error(ErrorKind::MissingDualComplex, "descriptor carries no dual complex");
  DualComplexReport rep;
  for (int p = pages.ss.pMin(); p <= pages.ss.pMax(); ++p)
    if (auto d = pages.ss.dim(2, p, 0)) rep.e2Row[p] = d;
  auto sd = suspension(*h.dualComplex);
  rep.unreduced = nonzeroDims(Cohomology(cochains(sd, Ring::F2)));
  rep.reduced = rep.unreduced;
  if (rep.reduced.count(0) && --rep.reduced[0] == 0) rep.reduced.erase(0);
  rep.matchesUnreduced = rep.unreduced == rep.e2Row;
  rep.matchesReduced = rep.reduced == rep.e2Row;
  return rep;
}

namespace descriptors {

namespace {

HyperresolutionDescriptor nodal(const SimplicialComplex& k, const std::string& v1, const std::string& v2) {
  HyperresolutionDescriptor h;
  h.n = 1;
  auto pt = SimplicialComplex::fromFacets(std::vector<std::string>{"y"}, std::vector<std::vector<std::string>>{{"y"}});
  auto two = SimplicialComplex::fromFacets(std::vector<std::string>{"u", "v"},
                                           std::vector<std::vector<std::string>>{{"u"}, {"v"}});
  h.spaces[1] = k;
  h.spaces[2] = pt;
  h.spaces[3] = two;
  h.maps[{1, 3}] = SimplicialMap::fromLabels(two, k, {{"u", v1}, {"v", v2}});
  h.maps[{2, 3}] = SimplicialMap::fromLabels(two, pt, {{"u", "y"}, {"v", "y"}});
  h.dualComplex = two;
  return h;
}

}  // namespace

HyperresolutionDescriptor nodalCurve() {
  auto h = nodal(spaces::sphere(2), "0", "2");
  h.target = spaces::sphereWedgeCircle();
  return h;
}

HyperresolutionDescriptor nodalGenusTwo() {
  auto k = spaces::genusTwo();
  return nodal(k, k.labels().front(), k.labels().back());
}

HyperresolutionDescriptor nodalProjectivePlane() { return nodal(spaces::projectivePlane(), "0", "5"); }

HyperresolutionDescriptor smooth(const SimplicialComplex& k) {
  HyperresolutionDescriptor h;
  h.n = 0;
  h.spaces[1] = k;
  h.dualComplex = SimplicialComplex();
  return h;
}

HyperresolutionDescriptor disjointSum(const HyperresolutionDescriptor& a, const HyperresolutionDescriptor& b) {
  if (a.n != b.n) throw Error(ErrorKind::IncompatibleDiagrams, "cubes of different arity");
  HyperresolutionDescriptor h;
  h.n = a.n;
  for (const auto& [s, k] : a.spaces) h.spaces[s] = disjointUnion(k, b.spaces.at(s));
  for (const auto& [ab, f] : a.maps) {
    const auto& g = b.maps.at(ab);
    std::vector<int> vm = f.vertexMap();
    int offTgt = static_cast<int>(f.target().vertexCount());
    for (int v : g.vertexMap()) vm.push_back(v + offTgt);
    h.maps[ab] = SimplicialMap(h.spaces.at(ab.second), h.spaces.at(ab.first), vm);
  }
  if (a.dualComplex && b.dualComplex) h.dualComplex = disjointUnion(*a.dualComplex, *b.dualComplex);
  return h;
}

}  // namespace descriptors

}  // namespace ctop
