#include "ctop/deligne.hpp"

#include <algorithm>

#include "ctop/steenrod.hpp"

namespace ctop {

namespace {

std::vector<bool> openSet(const StratifiedComplex& x, int k) {
  if (k > x.dimension()) return allCells(x.complex());
  return x.openComplement(k);
}

Subspace cocycles(const CochainComplex& a, int deg) {
  std::size_t n = a.dim(deg);
  if (a.dim(deg + 1) == 0) return Subspace::whole(a.ring(), n);
  return Subspace::span(a.ring(), n, kernel(a.d(deg)));
}

bool isIso(const Matrix& m) { return m.rows() == m.cols() && rank(m) == m.rows(); }

}  // namespace

DeligneIC::DeligneIC(const StratifiedComplex& x, Ring ring, DeligneOptions opt) : x_(x), ring_(ring) {
  const auto& k = x.complex();
  int n = x.dimension();
  for (const auto& p : enumeratePerversities(std::max(n, 2)))
    if (!p.isInfinite()) perv_.push_back(p);
  ambient_ = constantSheaf(k, ring, openSet(x, 2));
  auto whole = [&](const PosetSheaf& f, std::size_t c) {
    std::map<int, Subspace> out;
    const auto& a = f.stalk(c);
    for (int t = a.lo(); t <= a.hi(); ++t) out[t] = Subspace::whole(ring, a.dim(t));
    return out;
  };
  for (const auto& p : perv_) {
    auto& lv = levels_[p.str()];
    lv.assign(ambient_.cellCount(), {});
    for (std::size_t c = 0; c < ambient_.cellCount(); ++c)
      if (ambient_.inDomain(c)) lv[c] = whole(ambient_, c);
  }
  for (int stage = 2; stage <= n; ++stage) {
    auto u = openSet(x, stage), u1 = openSet(x, stage + 1);
    if (u == u1) {
      skipped_.push_back(stage);
    } else {
      auto pf = pushforwardOpen(ambient_, u1);
      for (const auto& p : perv_) {
        auto& lv = levels_[p.str()];
        std::vector<std::map<int, Subspace>> next(ambient_.cellCount());
        for (std::size_t c = 0; c < ambient_.cellCount(); ++c) {
          if (!u1[c]) continue;
          const auto& h = pf.holim[c];
          const auto& d = h.n->diagram();
          const auto& tot = h.n->total();
          std::map<int, std::vector<Vec>> gens;
          for (std::size_t cell = 0; cell < d.cellCount(); ++cell) {
            std::size_t tau = h.vertexCell[d.cell(cell).back()];
            int m = d.cellDim(cell);
            for (const auto& [deg, sub] : lv[tau]) {
              auto off = h.n->offset(deg + m, cell);
              if (!off) continue;
              for (const auto& b : sub.basis()) {
                Vec v(ring, tot.dim(deg + m));
                v.place(*off, b);
                gens[deg + m].push_back(std::move(v));
              }
            }
          }
          for (int t = tot.lo(); t <= tot.hi(); ++t) next[c][t] = Subspace::span(ring, tot.dim(t), gens[t]);
        }
        lv = std::move(next);
      }
      ambient_ = std::move(pf.sheaf);
    }
    if (!opt.truncate) continue;
    for (const auto& p : perv_) {
      int idx = p(stage) + (opt.bumpStage && *opt.bumpStage == stage ? opt.by : 0);
      auto& lv = levels_[p.str()];
      for (std::size_t c = 0; c < ambient_.cellCount(); ++c) {
        if (!u1[c]) continue;
        const auto& a = ambient_.stalk(c);
        for (auto& [deg, sub] : lv[c]) {
          if (deg > idx) sub = Subspace(ring, a.dim(deg));
          else if (deg == idx) sub = sub.intersect(cocycles(a, deg));
        }
      }
    }
  }
  sections_ = sectionsCellular(ambient_);
}

const Perversity& DeligneIC::key(const Perversity& p) const {
  for (const auto& q : perv_)
    if (q == p) return q;
  throw Error(ErrorKind::InvalidPerversity, "perversity of the wrong dimension", p.str());
}

const std::vector<std::map<int, Subspace>>& DeligneIC::levelSpaces(const Perversity& p) const {
  return levels_.at(key(p).str());
}

PosetSheaf DeligneIC::sheaf(const Perversity& p) const {
  if (p.isInfinite()) return ambient_;
  const auto& lv = levelSpaces(p);
  PosetSheaf out(ambient_.complex(), ring_);
  std::vector<Subcomplex> subs(ambient_.cellCount());
  for (std::size_t c = 0; c < ambient_.cellCount(); ++c) {
    std::map<int, std::vector<Vec>> bases;
    for (const auto& [deg, sub] : lv[c]) bases[deg] = sub.basis();
    subs[c] = subcomplex(ambient_.stalk(c), bases);
    out.setStalk(c, subs[c].complex);
  }
  for (std::size_t c = 0; c < ambient_.cellCount(); ++c)
    for (auto f : ambient_.facesOf(c))
      if (f != c) out.setRestriction(f, c, restrictMap(ambient_.restriction(f, c), subs[f], subs[c]));
  return out;
}

const Subcomplex& DeligneIC::sections(const Perversity& p) const {
  std::string name = p.isInfinite() ? "inf" : key(p).str();
  auto it = global_.find(name);
  if (it != global_.end()) return it->second;
  const auto& tot = sections_.total();
  std::map<int, std::vector<Vec>> bases;
  if (p.isInfinite()) {
    for (int t = tot.lo(); t <= tot.hi(); ++t)
      for (std::size_t i = 0; i < tot.dim(t); ++i) bases[t].push_back(Vec::unit(ring_, tot.dim(t), i));
  } else {
    const auto& lv = levelSpaces(p);
    const auto& d = sections_.diagram();
    for (std::size_t c = 0; c < d.cellCount(); ++c) {
      int m = d.cellDim(c);
      for (const auto& [deg, sub] : lv[c]) {
        auto off = sections_.offset(deg + m, c);
        if (!off) continue;
        for (const auto& b : sub.basis()) {
          Vec v(ring_, tot.dim(deg + m));
          v.place(*off, b);
          bases[deg + m].push_back(std::move(v));
        }
      }
    }
  }
  return global_.emplace(name, subcomplex(tot, bases)).first->second;
}

const Cohomology& DeligneIC::cohomology(const Perversity& p) const {
  std::string name = p.isInfinite() ? "inf" : key(p).str();
  auto it = h_.find(name);
  if (it != h_.end()) return it->second;
  return h_.emplace(name, Cohomology(sections(p).complex)).first->second;
}

std::map<int, std::size_t> DeligneIC::ih(const Perversity& p) const {
  std::map<int, std::size_t> out;
  for (auto [k, d] : cohomology(p).dims())
    if (d) out[k] = d;
  return out;
}

ChainMap DeligneIC::transition(const Perversity& p, const Perversity& q) const {
  if (!p.leq(q)) throw Error(ErrorKind::InvalidPerversity, "transition needs p <= q", p.str() + "->" + q.str());
  return restrictMap(ChainMap::identity(sections_.total()), sections(p), sections(q));
}

// ---------------------------------------------------------------- axioms

AxiomReport checkAxioms(const StratifiedComplex& x, const Perversity& p, const PosetSheaf& a) {
  AxiomReport rep;
  if (p.isInfinite()) {
    rep.skipped = true;
    return rep;
  }
  if (!a.wholeSpace()) throw Error(ErrorKind::NotOpen, "axioms are checked on a sheaf over the whole space");
  int n = x.dimension();
  std::vector<Cohomology> h;
  for (std::size_t c = 0; c < a.cellCount(); ++c) h.emplace_back(a.stalk(c));
  auto fail = [&](const char* ax, std::size_t c, int deg, std::string detail) {
    rep.failures.push_back({ax, a.cellName(c), deg, std::move(detail)});
  };
  for (std::size_t c = 0; c < a.cellCount(); ++c)
    for (auto [deg, d] : h[c].dims())
      if (deg < 0 && d) {
        fail("AX1", c, deg, "stalk cohomology in negative degree");
        break;
      }
  auto u2 = openSet(x, 2);
  for (std::size_t c = 0; c < a.cellCount(); ++c) {
    if (!u2[c]) continue;
    bool bad = false;
    for (auto [deg, d] : h[c].dims())
      if (d != (deg == 0 ? 1u : 0u)) {
        fail("AX0", c, deg, "stalk cohomology on the regular part is not R in degree 0");
        bad = true;
        break;
      }
    if (!bad && h[c].dim(0) != 1) {
      fail("AX0", c, 0, "stalk cohomology on the regular part is not R in degree 0");
      bad = true;
    }
    if (bad) continue;
    for (auto f : a.facesOf(c)) {
      if (f == c || !u2[f] || h[f].dim(0) != 1) continue;
      auto m = inducedMap(a.restriction(f, c), h[f], h[c]);
      if (!m.count(0) || !isIso(m.at(0))) {
        fail("AX0", c, 0, "restriction from " + a.cellName(f) + " is not an isomorphism");
        break;
      }
    }
  }
  for (int k = 2; k <= n; ++k) {
    auto u = openSet(x, k), u1 = openSet(x, k + 1);
    for (std::size_t c = 0; c < a.cellCount(); ++c) {
      if (!u1[c] || u[c]) continue;
      for (auto [deg, d] : h[c].dims())
        if (deg > p(k) && d) {
          fail("AX2", c, deg, "stalk cohomology above p(" + std::to_string(k) + ") = " + std::to_string(p(k)));
          break;
        }
      auto hol = localHolim(a, c, u);
      Cohomology hh(hol.n->total());
      auto m = inducedMap(unitMap(a, c, hol), h[c], hh);
      for (int deg = std::min(h[c].lo(), hh.lo()); deg <= p(k); ++deg) {
        std::size_t src = h[c].dim(deg), tgt = hh.dim(deg);
        bool iso = src == tgt && (src == 0 || (m.count(deg) && isIso(m.at(deg))));
        if (!iso) {
          fail("AX3", c, deg,
               "attaching map H^" + std::to_string(deg) + " is not an isomorphism (" + std::to_string(src) + " -> " +
                   std::to_string(tgt) + ")");
          break;
        }
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------- squares

IHSquare ihSteenrod(const DeligneIC& ic, const Perversity& p, int k, const Vec& x, int s) {
  if (ic.ring() != Ring::F2) throw Error(ErrorKind::UnsupportedRing, "Steenrod squares need F2 coefficients");
  if (s < 0) throw Error(ErrorKind::DegreeOutOfRange, "negative square", std::to_string(s));
  IHSquare out;
  out.target = p.isInfinite() ? p : lPerversity(p, s);
  const auto& src = ic.sections(p);
  const auto& tgt = ic.sections(out.target);
  const auto& N = ic.ambientSections();
  const auto& h = ic.cohomology(out.target);
  int deg = k + s;
  if (s > k) {
    out.classVec = Vec(Ring::F2, h.dim(deg));
    return out;
  }
  if (!ic.cohomology(p).isCocycle(k, x)) throw Error(ErrorKind::RepresentativeMissing, "not a cocycle", std::to_string(k));
  Vec xa = src.inclusion.apply(k, x);
  Vec dx = N.total().applyD(k, xa);
  Vec y = N.cupL(k, xa, k, xa, k - s);
  if (!dx.isZero()) y += N.cupL(k + 1, dx, k, xa, k - s + 1);
  if (tgt.complex.dim(deg) == 0) {
    out.inTarget = y.isZero();
    if (out.inTarget) out.classVec = Vec(Ring::F2, 0);
    else out.detail = "P^s(x) leaves the target level";
    return out;
  }
  auto coords = LinearSolver(tgt.inclusion.get(deg)).solve(y);
  if (!coords) {
    out.inTarget = false;
    out.detail = "P^s(x) leaves the target level " + out.target.str();
    return out;
  }
  out.classVec = h.classOf(deg, *coords);
  return out;
}

Matrix ihSteenrodMatrix(const DeligneIC& ic, const Perversity& p, int k, int s) {
  const auto& h = ic.cohomology(p);
  Perversity t = p.isInfinite() ? p : lPerversity(p, s);
  std::vector<Vec> cols;
  for (const auto& r : h.reps(k)) {
    auto sq = ihSteenrod(ic, p, k, r, s);
    if (!sq.classVec) throw Error(ErrorKind::ComputeError, sq.detail, std::to_string(k));
    cols.push_back(*sq.classVec);
  }
  return Matrix::fromColumns(Ring::F2, ic.cohomology(t).dim(k + s), cols);
}

}  // namespace ctop
