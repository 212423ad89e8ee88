// Acceptance run: one line per criterion, exit status 1 if any fails.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>

#include "cli.hpp"
#include "ctop/deligne.hpp"
#include "ctop/spaces.hpp"
#include "ctop/spectral.hpp"
#include "ctop/steenrod.hpp"
#include "ctop/weight.hpp"
#include "diagrams.hpp"
#include "oracle.hpp"
#include "random_filtered.hpp"

using namespace ctop;

namespace {

struct Check {
  long count = 0;
  long failed = 0;
  std::string first;
  std::string note;
  void operator()(bool ok, const std::string& what) {
    ++count;
    if (ok) return;
    if (!failed) first = what;
    ++failed;
  }
};

struct Criterion {
  int id;
  std::string name;
  double limit;  // seconds, 0 = none
  std::function<void(Check&)> body;
};

std::map<int, std::size_t> nonzero(const std::vector<int>& b) {
  std::map<int, std::size_t> out;
  for (std::size_t i = 0; i < b.size(); ++i)
    if (b[i]) out[static_cast<int>(i)] = b[i];
  return out;
}

std::vector<std::vector<int>> facetsOf(const SimplicialComplex& k) {
  std::vector<std::vector<int>> out;
  for (const auto& f : k.facets()) out.push_back(f);
  return out;
}

std::map<int, std::size_t> bettiOf(const SimplicialComplex& k, Ring r = Ring::F2) {
  return nonzero(oracle::betti(facetsOf(k), r == Ring::Q));
}

std::map<int, std::size_t> dropZeros(const std::map<int, std::size_t>& m) {
  std::map<int, std::size_t> out;
  for (auto [k, d] : m)
    if (d) out[k] = d;
  return out;
}

Vec randomVec(std::mt19937& g, std::size_t n) {
  Vec v(Ring::F2, n);
  for (std::size_t i = 0; i < n; ++i)
    if (g() & 1u) v.set(i, 1L);
  return v;
}

Vec vecFromBits(std::size_t n, unsigned bits) {
  Vec v(Ring::F2, n);
  for (std::size_t i = 0; i < n; ++i)
    if (bits >> i & 1u) v.set(i, 1L);
  return v;
}

std::string where(const std::string& space, int p, int q, int i) {
  return space + " p=" + std::to_string(p) + " q=" + std::to_string(q) + " i=" + std::to_string(i);
}

// ---------------------------------------------------------------- 1

void cupLaws(Check& c, const std::string& name, const SimplicialComplex& k, const CupIAlgebra& alg, int p, const Vec& u,
             int q, const Vec& v) {
  const auto& cx = alg.complex();
  int top = k.dimension();
  auto zero = [&](int deg) { return Vec(Ring::F2, k.count(deg)); };
  for (int i = 0; i <= p + q; ++i) {
    int m = p + q - i;
    if (m > top) continue;
    Vec uv = alg.cupI(i, p, u, q, v);
    c(uv.size() == k.count(m), where(name, p, q, i) + " result size");
    // transposition
    c(alg.theta({E2Word::tau, i}, p, u, q, v) == alg.theta({E2Word::e, i}, q, v, p, u), where(name, p, q, i) + " tau");
    if (i > std::min(p, q)) c(uv.isZero(), where(name, p, q, i) + " vanishing");
    if (p == i && q == i && u == v) c(uv == u, where(name, p, q, i) + " niceness");
    if (m + 1 > top) continue;
    Vec lhs = cx.applyD(m, uv);
    Vec rhs = zero(m + 1);
    if (i >= 1) rhs += alg.cupI(i - 1, p, u, q, v) + alg.cupI(i - 1, q, v, p, u);
    if (p + 1 <= top) rhs += alg.cupI(i, p + 1, cx.applyD(p, u), q, v);
    if (q + 1 <= top) rhs += alg.cupI(i, p, u, q + 1, cx.applyD(q, v));
    c(lhs == rhs, where(name, p, q, i) + " Leibniz");
  }
}

void criterion1(Check& c) {
  long exhaustive = 0;
  for (auto [name, k] : {std::pair{"Delta1", spaces::simplex(1)}, std::pair{"S1", spaces::hollowTriangle()}}) {
    auto alg = simplicialCupIAlgebra(k);
    c(checkNice(alg).nice(), std::string(name) + " checkNice");
    for (int p = 0; p <= k.dimension(); ++p)
      for (int q = 0; q <= k.dimension(); ++q)
        for (unsigned a = 0; a < (1u << k.count(p)); ++a)
          for (unsigned b = 0; b < (1u << k.count(q)); ++b) {
            cupLaws(c, name, k, alg, p, vecFromBits(k.count(p), a), q, vecFromBits(k.count(q), b));
            ++exhaustive;
          }
  }
  // the niceness identity on every single cochain, not only on pairs
  for (auto k : {spaces::simplex(1), spaces::hollowTriangle()}) {
    auto alg = simplicialCupIAlgebra(k);
    for (int i = 0; i <= k.dimension(); ++i)
      for (unsigned a = 0; a < (1u << k.count(i)); ++a) {
        Vec u = vecFromBits(k.count(i), a);
        c(alg.cupI(i, i, u, i, u) == u, "a cup_i a = a");
      }
  }
  auto rp2 = spaces::projectivePlane();
  auto alg = simplicialCupIAlgebra(rp2);
  c(checkNice(alg, 100).nice(), "RP2 checkNice");
  std::mt19937 g(20261014);
  for (int t = 0; t < 600; ++t) {
    int p = static_cast<int>(g() % 3), q = static_cast<int>(g() % 3);
    Vec u = randomVec(g, rp2.count(p)), v = randomVec(g, rp2.count(q));
    if (t % 7 == 0 && p == q) v = u;
    cupLaws(c, "RP2", rp2, alg, p, u, q, v);
  }
  c.note = std::to_string(exhaustive) + " exhaustive pairs, 600 random RP2 pairs";
}

// ---------------------------------------------------------------- 2

void criterion2(Check& c) {
  std::mt19937 g(7);
  std::vector<std::pair<std::string, SimplicialComplex>> list{{"S1", spaces::hollowTriangle()},
                                                              {"S2", spaces::sphere(2)},
                                                              {"T2", spaces::torus()},
                                                              {"RP2", spaces::projectivePlane()},
                                                              {"dDelta4", spaces::sphere(3)}};
  long classes = 0;
  for (const auto& [name, k] : list) {
    auto alg = simplicialCupIAlgebra(k);
    Cohomology h(alg.complex());
    c(dropZeros(h.dims()) == bettiOf(k), name + " cohomology against the oracle");
    int top = k.dimension();
    for (int deg = 0; deg <= top; ++deg)
      for (std::size_t j = 0; j < h.dim(deg); ++j) {
        ++classes;
        const Vec& x0 = h.reps(deg)[j];
        std::map<int, Vec> first;
        for (int rep = 0; rep < 5; ++rep) {
          Vec x = x0;
          if (rep > 0 && deg > 0) x += alg.complex().applyD(deg - 1, randomVec(g, k.count(deg - 1)));
          std::string at = name + " deg " + std::to_string(deg) + " class " + std::to_string(j) + " rep " + std::to_string(rep);
          c(h.classOf(deg, x) == Vec::unit(Ring::F2, h.dim(deg), j), at + " is a representative");
          c(sq(alg, h, deg, x, 0) == Vec::unit(Ring::F2, h.dim(deg), j), at + " Sq0");
          if (2 * deg <= top) c(sq(alg, h, deg, x, deg) == h.classOf(2 * deg, cup(k, deg, x, deg, x)), at + " top square");
          for (int s = deg + 1; s <= top + 1; ++s) c(sq(alg, h, deg, x, s).isZero(), at + " Sq above degree");
          for (int s = 0; s <= top - deg; ++s) {
            Vec v = sq(alg, h, deg, x, s);
            if (rep == 0) first[s] = v;
            else c(v == first[s], at + " independence s=" + std::to_string(s));
          }
        }
      }
  }
  auto rp2 = spaces::projectivePlane();
  auto alg = simplicialCupIAlgebra(rp2);
  Cohomology h(alg.complex());
  c(!sqMatrix(alg, h, 1, 1).isZero(), "Sq1 on RP2 nonzero");
  c.note = std::to_string(classes) + " classes x 5 representatives; Sq1(RP2) = " + sqMatrix(alg, h, 1, 1).row(0).str();
}

// ---------------------------------------------------------------- 3

void criterion3(Check& c) {
  std::mt19937 g(31);
  for (int t = 0; t < 100; ++t) {
    Ring ring = t % 2 ? Ring::Q : Ring::F2;
    auto inst = rf::randomInstance(g, ring, 6, 4, 4);
    SpectralSequence ss(inst.fc);
    std::string tag = "instance " + std::to_string(t) + " ";
    for (int w = inst.fc.bottom(); w <= inst.fc.top(); ++w) {
      Cohomology gr(gradedPiece(inst.fc, w));
      for (int n = inst.lo; n <= inst.hi; ++n) {
        c(ss.dim(1, -w, n + w) == gr.dim(n), tag + "E1 vs H(Gr)");
        c(gr.dim(n) == inst.grH(w, n), tag + "H(Gr) vs oracle");
      }
    }
    for (int r = 0; r <= ss.lastPage() + 1; ++r)
      for (int p = ss.pMin() - r - 1; p <= ss.pMax() + r + 1; ++p)
        for (int n = inst.lo; n <= inst.hi; ++n) {
          int q = n - p;
          c(ss.dim(r, p, q) == inst.dim(r, p, q), tag + "page vs oracle");
          if (r == 0) continue;
          std::size_t out = rank(ss.d(r, p, q)), in = rank(ss.d(r, p - r, q + r - 1));
          c(ss.dim(r + 1, p, q) + out + in == ss.dim(r, p, q),
            tag + "page turn r=" + std::to_string(r) + " p=" + std::to_string(p) + " q=" + std::to_string(q));
        }
    Cohomology hh(inst.fc.complex());
    for (int n = inst.lo; n <= inst.hi; ++n) {
      std::size_t sum = 0;
      for (int p = ss.pMin(); p <= ss.pMax(); ++p) sum += ss.dimInfinity(p, n - p);
      c(sum == hh.dim(n), tag + "sum E_inf = dim H");
      c(hh.dim(n) == inst.h(n), tag + "H vs oracle");
    }
    c(verifySpectralSequence(ss).ok(), tag + "self check");
  }
  c.note = "50 over F2, 50 over Q";
}

// ---------------------------------------------------------------- 4

void criterion4(Check& c) {
  std::mt19937 g(2027);
  for (int it = 0; it < 25; ++it) {
    Ring ring = it % 2 ? Ring::Q : Ring::F2;
    auto R = rf::randomInstance(g, ring, 3, 3, 3);
    auto S = rf::randomInstance(g, ring, 3, 3, 3);
    auto T = rf::randomInstance(g, ring, 3, 3, 3);
    auto A0 = diag::filteredSum(R.fc, S.fc), A01 = diag::filteredSum(R.fc, T.fc);
    CubicalCodiagram d(ring, 1);
    d.setFiltration(1, A0);
    d.setFiltration(2, T.fc);
    d.setFiltration(3, A01);
    std::vector<const CochainComplex*> rs{&R.fc.complex(), &S.fc.complex()}, rt{&R.fc.complex(), &T.fc.complex()},
        t{&T.fc.complex()};
    d.setArrow(1, 3, diag::blockMap(rs, 0, rt, 0, A0.complex(), A01.complex()));
    d.setArrow(2, 3, diag::blockMap(t, 0, rt, 1, T.fc.complex(), A01.complex()));
    auto n = normalize(d);
    SpectralSequence ss(normalizeSigma(d, n));
    // object alpha contributes E1^{p-m,q}(A^alpha) with m = |alpha| - 1, from the closed-form oracles
    auto end = [&](int p, int q) {
      return R.dim(1, p, q) + S.dim(1, p, q) + T.dim(1, p, q) + R.dim(1, p - 1, q) + T.dim(1, p - 1, q);
    };
    for (int p = -8; p <= 8; ++p)
      for (int q = -8; q <= 8; ++q)
        c(ss.dim(1, p, q) == end(p, q), "diagram " + std::to_string(it) + " at (" + std::to_string(p) + "," + std::to_string(q) + ")");
  }
  c.note = "25 diagrams, bidegrees -8..8";
}

// ---------------------------------------------------------------- 5

std::map<std::pair<int, int>, std::size_t> pageDims(const SpectralSequence& ss, int r) {
  std::map<std::pair<int, int>, std::size_t> out;
  for (int p = ss.pMin(); p <= ss.pMax(); ++p)
    for (int n = ss.lo(); n <= ss.hi(); ++n)
      if (auto d = ss.dim(r, p, n - p)) out[{p, n - p}] = d;
  return out;
}

void criterion5(Check& c) {
  auto h = descriptors::nodalCurve();
  auto w = weightSS(h, Ring::F2, false);
  using PQ = std::map<std::pair<int, int>, std::size_t>;
  c(pageDims(w.ss, 2) == PQ{{{0, 0}, 1}, {{1, 0}, 1}, {{0, 2}, 1}}, "E2 dimensions");
  c(w.abutment == std::map<int, std::size_t>{{0, 1}, {1, 1}, {2, 1}}, "abutment (1,1,1)");
  c(h.target.has_value() && w.abutment == bettiOf(*h.target), "abutment vs the direct triangulation");
  c(bettiOf(spaces::sphereWedgeCircle()) == w.abutment, "abutment vs S2 v S1");
  auto sq = squareOfCube(h, Ring::F2);
  auto les = acyclicSquareCheck(sq.x, sq.xt, sq.y, sq.yt, sq.maps);
  c(les.exact, "long exact sequence" + (les.failures.empty() ? std::string() : " at " + les.failures.front()));
  auto dc = dualComplexRow(h, w);
  c(dc.matchesUnreduced != dc.matchesReduced, "exactly one dual-complex convention");
  c.note = std::string("dual complex row matches the ") + (dc.matchesUnreduced ? "unreduced" : dc.matchesReduced ? "reduced" : "no") +
           " cohomology of the suspension";
}

// ---------------------------------------------------------------- 6

void criterion6(Check& c) {
  long ops = 0, classes = 0;
  for (auto [name, h] : {std::pair{"nodal curve", descriptors::nodalCurve()}, std::pair{"nodal genus 2", descriptors::nodalGenusTwo()}}) {
    auto w = weightSS(h, Ring::F2, true);
    const auto& n = w.normalization;
    for (const auto& [rs, list] : w.steenrod) {
      auto [r, s] = rs;
      if (r != 2) continue;
      for (const auto& op : list) {
        ++ops;
        std::string at = std::string(name) + " Sq" + std::to_string(s) + " on E2^(" + std::to_string(op.p) + "," + std::to_string(op.q) + ")";
        int k = op.p + op.q;
        c(op.tp == op.p - op.q + s && op.tq == 2 * op.q, at + " target bidegree");
        c(op.matrix.cols() == w.ss.dim(2, op.p, op.q) && op.matrix.rows() == w.ss.dim(2, op.tp, op.tq), at + " shape");
        c(op.outOfRangeZero, at + " out-of-range part");
        for (int col : op.columns) c(col >= op.p && col <= 2 * op.p && 2 * op.p - col <= k - s, at + " column range");
        for (std::size_t j = 0; j < w.ss.dim(2, op.p, op.q); ++j) {
          ++classes;
          Vec x = pageRepresentative(n, w.ss, 2, op.p, op.q, j);
          Vec base = pageSteenrodOn(n, w.ss, s, 2, op.p, op.q, x);
          c(base == op.matrix.column(j), at + " matrix column");
          for (unsigned seed = 1; seed <= 5; ++seed) {
            Vec y = perturbRepresentative(w.ss, 2, op.p, op.q, x, seed * 131 + static_cast<unsigned>(j));
            c(w.ss.classOf(2, op.p, op.q, y) == w.ss.classOf(2, op.p, op.q, x), at + " perturbed representative");
            c(pageSteenrodOn(n, w.ss, s, 2, op.p, op.q, y) == base, at + " independence");
          }
        }
      }
    }
  }
  c.note = std::to_string(ops) + " operations, " + std::to_string(classes) + " basis classes x 5 representatives";
}

// ---------------------------------------------------------------- 7

std::vector<int> seqOf(const Perversity& p) {
  std::vector<int> v;
  for (int k = 2; k <= p.n(); ++k) v.push_back(p(k));
  return v;
}

void criterion7(Check& c) {
  auto P = [](int n, std::vector<int> v) { return Perversity::make(n, std::move(v)); };
  c(oplus(P(4, {0, 0, 1}), P(4, {0, 1, 1})) == P(4, {0, 1, 2}), "(0,0,1)+(0,1,1)");
  c(oplus(P(4, {0, 1, 1}), P(4, {0, 1, 2})).isInfinite(), "(0,1,1)+(0,1,2)");
  long triples = 0;
  for (int n = 2; n <= 6; ++n) {
    const auto& all = enumeratePerversities(n);
    std::vector<std::vector<int>> finite;
    for (const auto& p : all)
      if (!p.isInfinite()) finite.push_back(seqOf(p));
    std::sort(finite.begin(), finite.end());
    c(finite == oracle::perversities(n), "enumeration n=" + std::to_string(n));
    auto z = Perversity::zero(n);
    for (const auto& p : all) {
      std::string tp = p.str();
      c(oplus(z, p) == p && oplus(p, z) == p, "unit " + tp);
      if (!p.isInfinite()) {
        c(oracle::doubleFits(seqOf(p)) == !oplus(p, p).isInfinite(), "Goresky range " + tp);
        c(oracle::doubleFits(seqOf(p)) == !oracle::perversitySum(seqOf(p), seqOf(p)).empty(), "Goresky oracle " + tp);
      }
      for (const auto& q : all) {
        auto s = oplus(p, q);
        c(s == oplus(q, p), "commutativity " + tp + " " + q.str());
        if (!p.isInfinite() && !q.isInfinite()) {
          auto o = oracle::perversitySum(seqOf(p), seqOf(q));
          c(o.empty() ? s.isInfinite() : !s.isInfinite() && seqOf(s) == o, "sum vs oracle " + tp + " " + q.str());
        } else {
          c(s.isInfinite(), "absorbing " + tp + " " + q.str());
        }
        for (const auto& r : all) {
          ++triples;
          c(oplus(s, r) == oplus(p, oplus(q, r)), "associativity");
        }
      }
    }
  }
  c.note = std::to_string(triples) + " triples over n = 2..6";
}

// ---------------------------------------------------------------- 8

std::map<int, std::size_t> reflect(const std::map<int, std::size_t>& h, int n) {
  std::map<int, std::size_t> out;
  for (auto [i, d] : h) out[n - i] = d;
  return out;
}

// suspension of a closed (n-1)-manifold with Betti numbers b, cone points as X_0
std::map<int, std::size_t> suspensionHomology(const std::vector<int>& b, int n, int pn) {
  int cut = n - 1 - pn;
  std::vector<int> out(n + 1, 0);
  auto at = [&](int i) { return i >= 0 && i < static_cast<int>(b.size()) ? b[i] : 0; };
  for (int i = 0; i <= n; ++i) out[i] = i < cut ? at(i) : i > cut ? at(i - 1) : 0;
  return nonzero(out);
}

std::map<int, std::size_t> suspensionCohomology(const std::vector<int>& b, int n, int pn) {
  std::vector<int> out(n + 1, 0);
  auto at = [&](int i) { return i >= 0 && i < static_cast<int>(b.size()) ? b[i] : 0; };
  for (int i = 0; i <= n; ++i) out[i] = i <= pn ? at(i) : i > pn + 1 ? at(i - 1) : 0;
  return nonzero(out);
}

StratifiedComplex pointStratum(const SimplicialComplex& k) { return stratify(k, {{k.dimension(), {{0}}}}); }

void criterion8(Check& c) {
  for (auto [name, k] : {std::pair{"S2", spaces::sphere(2)}, std::pair{"T2", spaces::torus()}}) {
    auto want = bettiOf(k);
    auto x = spaces::trivialStratification(k);
    DeligneIC ic(x, Ring::F2);
    for (const auto& p : enumeratePerversities(2)) {
      c(dropZeros(intersectionHomology(x, p, Ring::F2)) == want, std::string(name) + " chains " + p.str());
      c(dropZeros(ic.ih(p)) == want, std::string(name) + " sheaf " + p.str());
    }
    // a fake point stratum changes nothing at finite perversities
    auto y = pointStratum(k);
    DeligneIC icy(y, Ring::F2);
    auto z = Perversity::zero(2);
    c(dropZeros(intersectionHomology(y, z, Ring::F2)) == want, std::string(name) + " point stratum chains");
    c(dropZeros(icy.ih(z)) == want, std::string(name) + " point stratum sheaf");
  }
  auto pt = spaces::pinchedTorusStratified();
  auto z2 = Perversity::zero(2);
  auto golden = std::map<int, std::size_t>{{0, 1}, {2, 1}};
  c(dropZeros(intersectionHomology(pt, z2, Ring::F2)) == golden, "pinched torus chains (1,0,1)");
  DeligneIC icp(pt, Ring::F2);
  c(dropZeros(icp.ih(z2)) == golden, "pinched torus sheaf (1,0,1)");
  c(golden == bettiOf(spaces::sphere(2)), "pinched torus vs its normalization");

  auto st = spaces::suspendedTorus();
  auto b = oracle::betti(facetsOf(spaces::torus()), false);
  DeligneIC ics(st, Ring::F2);
  std::string vals;
  for (const auto& p : {Perversity::zero(3), Perversity::top(3)}) {
    auto chains = dropZeros(intersectionHomology(st, p, Ring::F2));
    auto sheaf = dropZeros(ics.ih(p));
    c(chains == suspensionHomology(b, 3, p(3)), "suspended torus chains " + p.str());
    c(sheaf == suspensionCohomology(b, 3, p(3)), "suspended torus sheaf " + p.str());
    c(reflect(suspensionHomology(b, 3, p(3)), 3) == suspensionCohomology(b, 3, p(3)), "oracle duality " + p.str());
    c(reflect(chains, 3) == sheaf, "pipelines agree " + p.str());
    vals += " " + p.str() + ":" + dimsString(sheaf);
  }
  c.note = "suspended torus sheaf IH" + vals;
}

// ---------------------------------------------------------------- 9

bool singularFace(const StratifiedComplex& x, const PosetSheaf& s, const std::string& face) {
  for (std::size_t c = 0; c < s.cellCount(); ++c)
    if (s.cellName(c) == face) return x.inSkeleton(2, s.cell(c));
  return false;
}

void criterion9(Check& c) {
  std::vector<std::pair<std::string, StratifiedComplex>> list{{"S2", spaces::trivialStratification(spaces::sphere(2))},
                                                              {"T2", spaces::trivialStratification(spaces::torus())},
                                                              {"S2 with a point", pointStratum(spaces::sphere(2))},
                                                              {"pinched torus", spaces::pinchedTorusStratified()},
                                                              {"suspended torus", spaces::suspendedTorus()}};
  long checked = 0;
  for (const auto& [name, x] : list) {
    DeligneIC ic(x, Ring::F2);
    for (const auto& p : enumeratePerversities(x.dimension())) {
      if (p.isInfinite()) continue;
      auto rep = checkAxioms(x, p, ic.sheaf(p));
      ++checked;
      c(!rep.skipped && rep.ok(), name + " " + p.str() + (rep.failures.empty() ? "" : " " + rep.failures[0].axiom));
    }
  }
  std::string summary;
  auto localized = [&](const std::string& what, const StratifiedComplex& x, const Perversity& p, const PosetSheaf& s) {
    auto rep = checkAxioms(x, p, s);
    c(!rep.failures.empty(), what + " fails");
    for (const auto& f : rep.failures) c(singularFace(x, s, f.face), what + " failure at a singular face");
    if (!rep.failures.empty())
      summary += " " + what + ":" + rep.failures[0].axiom + "@" + rep.failures[0].face + "/" + std::to_string(rep.failures[0].degree);
  };
  auto st = spaces::suspendedTorus();
  auto pt = spaces::pinchedTorusStratified();
  DeligneOptions bump;
  bump.bumpStage = 3;
  DeligneIC bumped(st, Ring::F2, bump);
  for (const auto& p : {Perversity::zero(3), Perversity::top(3)}) localized("bump3 " + p.str(), st, p, bumped.sheaf(p));
  bump.bumpStage = 2;
  DeligneIC bumpedP(pt, Ring::F2, bump);
  localized("pinched bump2", pt, Perversity::zero(2), bumpedP.sheaf(Perversity::zero(2)));
  localized("constant (0,1)", st, Perversity::top(3), constantSheaf(st.complex(), Ring::F2));
  localized("pinched constant", pt, Perversity::zero(2), constantSheaf(pt.complex(), Ring::F2));
  c.note = std::to_string(checked) + " IC sheaves pass;" + summary;
}

// ---------------------------------------------------------------- 10

void criterion10(Check& c) {
  for (auto [name, k] : {std::pair{"RP2", spaces::projectivePlane()}, std::pair{"T2", spaces::torus()}, std::pair{"S2", spaces::sphere(2)}}) {
    DeligneIC ic(spaces::trivialStratification(k), Ring::F2);
    auto alg = simplicialCupIAlgebra(k);
    Cohomology h(alg.complex());
    auto p = Perversity::zero(2);
    for (int deg = 0; deg <= 2; ++deg)
      for (int s = 0; s <= 2 - deg; ++s) {
        auto m = ihSteenrodMatrix(ic, p, deg, s);
        auto o = sqMatrix(alg, h, deg, s);
        std::string at = std::string(name) + " Sq" + std::to_string(s) + " on degree " + std::to_string(deg);
        c(m.rows() == o.rows() && m.cols() == o.cols(), at + " shape");
        c(rank(m) == rank(o), at + " rank");
      }
  }
  {
    auto rp2 = spaces::projectivePlane();
    DeligneIC ic(spaces::trivialStratification(rp2), Ring::F2);
    c(rank(ihSteenrodMatrix(ic, Perversity::zero(2), 1, 1)) == 1, "RP2 IH Sq1 nonzero");
  }
  std::vector<std::pair<std::string, StratifiedComplex>> list{{"RP2", spaces::trivialStratification(spaces::projectivePlane())},
                                                              {"T2", spaces::trivialStratification(spaces::torus())},
                                                              {"pinched torus", spaces::pinchedTorusStratified()},
                                                              {"suspended torus", spaces::suspendedTorus()}};
  long classes = 0;
  for (const auto& [name, x] : list) {
    DeligneIC ic(x, Ring::F2);
    int n = x.dimension();
    for (const auto& p : enumeratePerversities(n)) {
      const auto& h = ic.cohomology(p);
      for (int k = 0; k <= n; ++k) {
        c(ihSteenrodMatrix(ic, p, k, 0) == Matrix::identity(Ring::F2, h.dim(k)), name + " Sq0 " + p.str());
        for (const auto& r : h.reps(k)) {
          ++classes;
          for (int s = 0; s <= n - k; ++s) {
            auto a = ihSteenrod(ic, p, k, r, s);
            std::string at = name + " " + p.str() + " Sq" + std::to_string(s) + " degree " + std::to_string(k);
            c(a.inTarget, at + " lands in the target level");
            if (p.isInfinite()) {
              c(a.target.isInfinite(), at + " target");
              continue;
            }
            std::vector<int> want;
            for (int j = 2; j <= n; ++j) want.push_back(std::min(2 * p(j), p(j) + s));
            auto o = oracle::smallestAbove(want);
            c(o.empty() ? a.target.isInfinite() : !a.target.isInfinite() && seqOf(a.target) == o, at + " target vs oracle");
          }
        }
      }
    }
  }
  c.note = std::to_string(classes) + " IH classes";
}

// ---------------------------------------------------------------- 11

std::vector<std::vector<std::string>> readJobs(const std::filesystem::path& file) {
  std::ifstream in(file);
  std::vector<std::vector<std::string>> jobs;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    std::vector<std::string> args;
    for (std::string a; ss >> a;) args.push_back(a);
    jobs.push_back(args);
  }
  return jobs;
}

void criterion11(Check& c) {
  std::filesystem::path data = CTOP_DATA_DIR;
  auto jobs = readJobs(data / "jobs.txt");
  c(!jobs.empty(), "corpus jobs present");
  auto cwd = std::filesystem::current_path();
  std::filesystem::current_path(data);
  for (const auto& job : jobs) {
    std::vector<std::string> outputs;
    for (const char* threads : {"1", "1", "4"}) {
      auto args = job;
      args.push_back("--threads");
      args.push_back(threads);
      auto r = cli::run(args);
      c(r.exit == 0, job[0] + " " + job.back() + " exit " + std::to_string(r.exit));
      outputs.push_back(r.output);
    }
    c(outputs[0] == outputs[1], "two runs differ: " + job[0]);
    c(outputs[0] == outputs[2], "thread counts differ: " + job[0]);
  }
  std::filesystem::current_path(cwd);
  c.note = std::to_string(jobs.size()) + " jobs x (2 runs at 1 thread + 1 run at 4)";
}

}  // namespace

int main() {
  std::vector<Criterion> all{
      {1, "cup_i laws", 10, criterion1},
      {2, "Steenrod squares", 30, criterion2},
      {3, "spectral sequence engine", 60, criterion3},
      {4, "normalization E1 end formula", 0, criterion4},
      {5, "nodal curve weight pipeline", 30, criterion5},
      {6, "page Steenrod operations", 0, criterion6},
      {7, "perversity arithmetic", 5, criterion7},
      {8, "intersection homology golden values", 60, criterion8},
      {9, "axiom checker", 0, criterion9},
      {10, "IH Steenrod squares", 0, criterion10},
      {11, "CLI determinism", 0, criterion11},
  };
  int failures = 0;
  for (const auto& cr : all) {
    Check c;
    auto t0 = std::chrono::steady_clock::now();
    std::string error;
    try {
      cr.body(c);
    } catch (const std::exception& e) {
      error = e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool timeOk = cr.limit <= 0 || secs < cr.limit;
    bool ok = error.empty() && c.failed == 0 && timeOk;
    if (!ok) ++failures;
    char timing[64];
    if (cr.limit > 0) std::snprintf(timing, sizeof timing, "%.2fs < %.0fs", secs, cr.limit);
    else std::snprintf(timing, sizeof timing, "%.2fs", secs);
    std::printf("criterion %2d %s  %-36s exact, %ld checks, %s", cr.id, ok ? "PASS" : "FAIL", cr.name.c_str(), c.count, timing);
    if (!error.empty()) std::printf("  error: %s", error.c_str());
    if (c.failed) std::printf("  %ld failed, first: %s", c.failed, c.first.c_str());
    if (!timeOk) std::printf("  over the time limit");
    if (!c.note.empty()) std::printf("  [%s]", c.note.c_str());
    std::printf("\n");
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, all.size());
  return failures ? 1 : 0;
}
