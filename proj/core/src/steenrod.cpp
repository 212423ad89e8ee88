#include "ctop/steenrod.hpp"

#include <memory>
#include <random>

namespace ctop {

std::vector<E2Word> differential(E2Word w) {
  if (w.i == 0) return {};
  return {E2Word{E2Word::e, w.i - 1}, E2Word{E2Word::tau, w.i - 1}};
}

CupIAlgebra::CupIAlgebra(CochainComplex c, Evaluator e) : c_(std::move(c)), eval_(std::move(e)) {
  if (c_.ring() != Ring::F2) throw Error(ErrorKind::UnsupportedRing, "cup_i algebras are defined over F2");
}

Vec CupIAlgebra::theta(E2Word w, int p, const Vec& a, int q, const Vec& b) const {
  if (w.i < 0) throw Error(ErrorKind::DegreeOutOfRange, "negative cup_i index");
  if (w.kind == E2Word::tau) return eval_(w.i, q, b, p, a);
  return eval_(w.i, p, a, q, b);
}

Vec CupIAlgebra::cupI(int i, int p, const Vec& a, int q, const Vec& b) const {
  return theta(E2Word{E2Word::e, i}, p, a, q, b);
}

CupIAlgebra simplicialCupIAlgebra(const SimplicialComplex& k) {
  auto kp = std::make_shared<SimplicialComplex>(k);
  return CupIAlgebra(cochains(k, Ring::F2), [kp](int i, int p, const Vec& a, int q, const Vec& b) {
    int m = p + q - i;
    if (m < 0 || m > kp->dimension()) return Vec(Ring::F2, 0);
    return cupI(*kp, p, a, q, b, i);
  });
}

NiceReport checkNice(const CupIAlgebra& alg, int samples, unsigned seed) {
  NiceReport rep;
  const CochainComplex& c = alg.complex();
  int lo = c.lo(), hi = c.hi();
  auto unit = [&](int n, std::size_t j) { return Vec::unit(Ring::F2, c.dim(n), j); };
  auto fail = [&](bool& flag, int i, int p, Vec a, int q, Vec b, std::string msg) {
    if (!flag) return;
    flag = false;
    rep.witnessI = i;
    rep.witnessDegreeA = p;
    rep.witnessDegreeB = q;
    rep.witnessA = std::move(a);
    rep.witnessB = std::move(b);
    rep.detail = std::move(msg);
  };
  // vanishing above the minimum degree: bilinear, so basis pairs decide it
  for (int p = lo; p <= hi && rep.vanishing; ++p)
    for (int q = lo; q <= hi && rep.vanishing; ++q)
      for (int i = std::max(0, std::min(p, q) + 1); p + q - i >= lo && rep.vanishing; ++i) {
        if (p + q - i > hi) continue;
        for (std::size_t x = 0; x < c.dim(p) && rep.vanishing; ++x)
          for (std::size_t y = 0; y < c.dim(q) && rep.vanishing; ++y) {
            Vec r = alg.cupI(i, p, unit(p, x), q, unit(q, y));
            if (!r.isZero())
              fail(rep.vanishing, i, p, unit(p, x), q, unit(q, y),
                   "cup_" + std::to_string(i) + " of basis elements in degrees " + std::to_string(p) + "," +
                       std::to_string(q) + " is nonzero");
          }
      }
  // idempotence on A^i: Q(a) = a cup_i a is a quadratic form; check on basis and polarize
  for (int i = std::max(lo, 0); i <= hi && rep.idempotent; ++i) {
    std::size_t n = c.dim(i);
    for (std::size_t x = 0; x < n && rep.idempotent; ++x) {
      Vec a = unit(i, x);
      if (alg.cupI(i, i, a, i, a) != a)
        fail(rep.idempotent, i, i, a, i, a, "a cup_" + std::to_string(i) + " a != a for a basis cochain");
    }
    for (std::size_t x = 0; x < n && rep.idempotent; ++x)
      for (std::size_t y = x + 1; y < n && rep.idempotent; ++y) {
        Vec a = unit(i, x), b = unit(i, y);
        Vec cross = alg.cupI(i, i, a, i, b) + alg.cupI(i, i, b, i, a);
        if (!cross.isZero()) {
          Vec s = a + b;
          fail(rep.idempotent, i, i, s, i, s, "a cup_" + std::to_string(i) + " a != a for a sum of two basis cochains");
        }
      }
  }
  std::mt19937 rng(seed);
  for (int t = 0; t < samples && rep.idempotent; ++t) {
    if (hi < std::max(lo, 0)) break;
    int i = std::uniform_int_distribution<int>(std::max(lo, 0), hi)(rng);
    Vec a(Ring::F2, c.dim(i));
    for (std::size_t j = 0; j < a.size(); ++j)
      if (rng() & 1u) a.set(j, 1L);
    if (alg.cupI(i, i, a, i, a) != a) fail(rep.idempotent, i, i, a, i, a, "sampled cochain violates a cup_i a = a");
  }
  return rep;
}

Vec psCochain(const CupIAlgebra& alg, int k, const Vec& a, int s) {
  if (s > k) throw Error(ErrorKind::DegreeOutOfRange, "P^s needs s <= deg a (s=" + std::to_string(s) + ", k=" + std::to_string(k) + ")");
  if (s < 0) throw Error(ErrorKind::DegreeOutOfRange, "P^s with negative s");
  const CochainComplex& c = alg.complex();
  Vec da = c.applyD(k, a);
  Vec out = alg.cupI(k - s, k, a, k, a);
  if (!da.isZero()) {
    Vec t = alg.cupI(k - s + 1, k + 1, da, k, a);
    if (t.size() == out.size()) out += t;
  }
  return out;
}

Vec sq(const CupIAlgebra& alg, const Cohomology& h, int k, const Vec& cocycle, int s) {
  if (s < 0) throw Error(ErrorKind::DegreeOutOfRange, "Sq^s with negative s");
  if (s > k) return Vec(Ring::F2, h.dim(k + s));
  Vec y = alg.cupI(k - s, k, cocycle, k, cocycle);
  return h.classOf(k + s, y);
}

Matrix sqMatrix(const CupIAlgebra& alg, const Cohomology& h, int k, int s) {
  Matrix m(Ring::F2, h.dim(k + s), h.dim(k));
  const auto& reps = h.reps(k);
  for (std::size_t j = 0; j < reps.size(); ++j) {
    Vec c = sq(alg, h, k, reps[j], s);
    for (std::size_t r = 0; r < c.size(); ++r)
      if (c.nonzero(r)) m.set(r, j, 1L);
  }
  return m;
}

}  // namespace ctop
