#include "ctop/perverse.hpp"

#include <mutex>
#include <sstream>

namespace ctop {

// ---------------------------------------------------------------- perversities

Perversity Perversity::make(int n, std::vector<int> values) {
  if (n < 1) throw Error(ErrorKind::InvalidPerversity, "dimension must be positive");
  std::size_t want = n >= 2 ? static_cast<std::size_t>(n - 1) : 0;
  if (values.size() != want)
    throw Error(ErrorKind::InvalidPerversity,
                "expected " + std::to_string(want) + " values p(2..n), got " + std::to_string(values.size()));
  if (!values.empty() && values[0] != 0) throw Error(ErrorKind::InvalidPerversity, "p(2) must be 0", "2");
  for (std::size_t i = 1; i < values.size(); ++i) {
    int step = values[i] - values[i - 1];
    if (step < 0 || step > 1)
      throw Error(ErrorKind::InvalidPerversity, "p(k) <= p(k+1) <= p(k)+1 fails", std::to_string(i + 2));
  }
  Perversity p;
  p.n_ = n;
  p.v_ = std::move(values);
  return p;
}

Perversity Perversity::zero(int n) { return make(n, std::vector<int>(n >= 2 ? n - 1 : 0, 0)); }

Perversity Perversity::top(int n) {
  std::vector<int> v;
  for (int k = 2; k <= n; ++k) v.push_back(k - 2);
  return make(n, v);
}

Perversity Perversity::infinity(int n) {
  Perversity p;
  p.n_ = n;
  p.inf_ = true;
  return p;
}

int Perversity::operator()(int k) const {
  if (inf_) throw Error(ErrorKind::InvalidPerversity, "the infinite perversity has no values");
  if (k < 2 || k > n_) throw Error(ErrorKind::DegreeOutOfRange, "perversity index out of range", std::to_string(k));
  return v_[k - 2];
}

bool Perversity::leq(const Perversity& o) const {
  if (n_ != o.n_) throw Error(ErrorKind::DimensionMismatch, "perversities of different dimensions");
  if (o.inf_) return true;
  if (inf_) return false;
  for (std::size_t i = 0; i < v_.size(); ++i)
    if (v_[i] > o.v_[i]) return false;
  return true;
}

bool Perversity::operator<(const Perversity& o) const {
  if (n_ != o.n_) return n_ < o.n_;
  if (inf_ != o.inf_) return !inf_;
  return v_ < o.v_;
}

std::string Perversity::str() const {
  if (inf_) return "inf";
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v_.size(); ++i) os << (i ? "," : "") << v_[i];
  os << ')';
  return os.str();
}

const std::vector<Perversity>& enumeratePerversities(int n) {
  static std::mutex mu;
  static std::map<int, std::vector<Perversity>> memo;
  std::lock_guard<std::mutex> lock(mu);
  auto it = memo.find(n);
  if (it != memo.end()) return it->second;
  if (n < 1 || n > 20) throw Error(ErrorKind::InvalidPerversity, "dimension out of range for enumeration");
  std::vector<Perversity> out;
  int len = n >= 2 ? n - 1 : 0;
  std::vector<int> v(len, 0);
  // increments after p(2) are 0/1; enumerate in lexicographic order of the values
  if (len == 0) {
    out.push_back(Perversity::make(n, {}));
  } else {
    int steps = len - 1;
    std::vector<std::vector<int>> all;
    for (unsigned mask = 0; mask < (1u << steps); ++mask) {
      std::vector<int> w(len, 0);
      for (int i = 1; i < len; ++i) w[i] = w[i - 1] + ((mask >> (steps - i)) & 1u);
      all.push_back(w);
    }
    std::sort(all.begin(), all.end());
    for (auto& w : all) out.push_back(Perversity::make(n, w));
  }
  out.push_back(Perversity::infinity(n));
  return memo.emplace(n, std::move(out)).first->second;
}

Perversity smallestDominating(int n, const std::vector<int>& h) {
  std::size_t len = n >= 2 ? static_cast<std::size_t>(n - 1) : 0;
  if (h.size() != len) throw Error(ErrorKind::DimensionMismatch, "bound has the wrong length");
  // r(k) >= h(j) for j <= k (monotone) and r(k) >= h(j) - (j - k) for j > k (slow growth)
  std::vector<int> r(len);
  for (std::size_t k = 0; k < len; ++k) {
    int best = 0;
    for (std::size_t j = 0; j < len; ++j) {
      int need = j <= k ? h[j] : h[j] - static_cast<int>(j - k);
      best = std::max(best, need);
    }
    r[k] = best;
  }
  if (!r.empty() && r[0] != 0) return Perversity::infinity(n);
  return Perversity::make(n, r);
}

Perversity oplus(const Perversity& p, const Perversity& q) {
  if (p.n() != q.n()) throw Error(ErrorKind::DimensionMismatch, "perversities of different dimensions");
  if (p.isInfinite() || q.isInfinite()) return Perversity::infinity(p.n());
  std::vector<int> h;
  for (int k = 2; k <= p.n(); ++k) {
    if (p(k) + q(k) > k - 2) return Perversity::infinity(p.n());
    h.push_back(p(k) + q(k));
  }
  return smallestDominating(p.n(), h);
}

Perversity oplusBruteForce(const Perversity& p, const Perversity& q) {
  if (p.n() != q.n()) throw Error(ErrorKind::DimensionMismatch, "perversities of different dimensions");
  const auto& all = enumeratePerversities(p.n());
  if (p.isInfinite() || q.isInfinite()) return all.back();
  std::vector<const Perversity*> ok;
  for (const auto& r : all) {
    if (r.isInfinite()) continue;
    bool dom = true;
    for (int k = 2; k <= p.n(); ++k)
      if (p(k) + q(k) > r(k)) dom = false;
    if (dom) ok.push_back(&r);
  }
  // the smallest element, if the dominating set has one below all others
  for (const auto* c : ok) {
    bool least = true;
    for (const auto* o : ok)
      if (!c->leq(*o)) least = false;
    if (least) return *c;
  }
  return all.back();
}

Perversity lPerversity(const Perversity& p, int s) {
  if (p.isInfinite()) return p;
  if (s < 0) throw Error(ErrorKind::DegreeOutOfRange, "negative Steenrod index");
  std::vector<int> h;
  for (int k = 2; k <= p.n(); ++k) h.push_back(std::min(2 * p(k), p(k) + s));
  return smallestDominating(p.n(), h);
}

bool goreskyDoubleFinite(const Perversity& p) {
  if (p.isInfinite()) return false;
  for (int k = 2; k <= p.n(); ++k)
    if (2 * p(k) > k - 2) return false;
  return true;
}

// ---------------------------------------------------------------- truncation

Subcomplex truncate(const CochainComplex& a, int k) {
  std::map<int, std::vector<Vec>> bases;
  Ring r = a.ring();
  for (int m = a.lo(); m <= a.hi(); ++m) {
    auto& b = bases[m];
    if (m < k)
      for (std::size_t i = 0; i < a.dim(m); ++i) b.push_back(Vec::unit(r, a.dim(m), i));
    else if (m == k)
      b = kernel(a.d(m));
  }
  return subcomplex(a, bases);
}

ChainMap restrictMap(const ChainMap& f, const Subcomplex& sa, const Subcomplex& sb) {
  Ring r = sa.complex.ring();
  const auto& A = sa.complex;
  const auto& B = sb.complex;
  int lo = std::min(A.lo(), B.lo()), hi = std::max(A.hi(), B.hi());
  std::vector<Matrix> parts;
  for (int n = lo; n <= hi; ++n) {
    std::vector<Vec> cols;
    Matrix inA = sa.inclusion.get(n), inB = sb.inclusion.get(n);
    LinearSolver solve(inB);
    for (std::size_t j = 0; j < A.dim(n); ++j) {
      Vec img = f.apply(n, inA.column(j));
      if (B.dim(n) == 0) {
        if (!img.isZero()) throw Error(ErrorKind::NotChainMap, "map leaves the target subcomplex", std::to_string(n));
        cols.push_back(Vec(r, 0));
        continue;
      }
      auto x = solve.solve(img);
      if (!x) throw Error(ErrorKind::NotChainMap, "map leaves the target subcomplex", std::to_string(n));
      cols.push_back(*x);
    }
    parts.push_back(Matrix::fromColumns(r, B.dim(n), cols));
  }
  return ChainMap::fromParts(r, lo, parts);
}

// ---------------------------------------------------------------- perverse complexes

PerverseComplex::PerverseComplex(int n, Ring ring, const LevelFn& level, const TransitionFn& transition)
    : n_(n), ring_(ring) {
  const auto& all = enumeratePerversities(n);
  for (const auto& p : all) {
    levels_.push_back(level(p));
    if (levels_.back().ring() != ring) throw Error(ErrorKind::RingMismatch, "level over the wrong ring", p.str());
  }
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = 0; j < all.size(); ++j)
      if (i != j && all[i].leq(all[j])) trans_.emplace(std::make_pair(i, j), transition(all[i], all[j]));
}

std::size_t PerverseComplex::index(const Perversity& p) const {
  const auto& all = enumeratePerversities(n_);
  for (std::size_t i = 0; i < all.size(); ++i)
    if (all[i] == p) return i;
  throw Error(ErrorKind::InvalidPerversity, "unknown perversity", p.str());
}

const CochainComplex& PerverseComplex::at(const Perversity& p) const { return levels_[index(p)]; }

ChainMap PerverseComplex::transition(const Perversity& p, const Perversity& q) const {
  std::size_t i = index(p), j = index(q);
  if (i == j) return ChainMap::identity(levels_[i]);
  auto it = trans_.find({i, j});
  if (it == trans_.end()) throw Error(ErrorKind::NotFunctorial, "no transition", p.str() + "->" + q.str());
  return it->second;
}

void PerverseComplex::checkFunctorial() const {
  const auto& all = enumeratePerversities(n_);
  auto same = [](const ChainMap& a, const ChainMap& b) {
    for (int k = std::min(a.lo(), b.lo()); k <= std::max(a.hi(), b.hi()); ++k) {
      Matrix x = a.get(k), y = b.get(k);
      if (x != y && !(x.isZero() && y.isZero())) return false;
    }
    return true;
  };
  for (const auto& [ij, f] : trans_)
    if (!isChainMap(f, levels_[ij.first], levels_[ij.second]))
      throw Error(ErrorKind::NotFunctorial, "transition is not a cochain map", all[ij.first].str() + "->" + all[ij.second].str());
  for (const auto& [ij, f] : trans_)
    for (const auto& [jk, g] : trans_) {
      if (jk.first != ij.second) continue;
      auto it = trans_.find({ij.first, jk.second});
      if (it == trans_.end() || !same(compose(g, f), it->second))
        throw Error(ErrorKind::NotFunctorial, "transitions do not compose",
                    all[ij.first].str() + "->" + all[ij.second].str() + "->" + all[jk.second].str());
    }
}

PerverseComplex truncatePerverse(const PerverseComplex& a, int k) {
  std::map<Perversity, Subcomplex> subs;
  for (const auto& p : enumeratePerversities(a.n())) {
    if (p.isInfinite()) subs[p] = truncate(a.at(p), a.at(p).hi() + 1);
    else subs[p] = truncate(a.at(p), k <= a.n() && k >= 2 ? p(k) : a.at(p).hi() + 1);
  }
  return PerverseComplex(
      a.n(), a.ring(), [&](const Perversity& p) { return subs.at(p).complex; },
      [&](const Perversity& p, const Perversity& q) { return restrictMap(a.transition(p, q), subs.at(p), subs.at(q)); });
}

namespace {

ChainMap tensorMap(const ChainMap& f, const ChainMap& g, const CochainComplex& a, const CochainComplex& b,
                   const CochainComplex& a2, const CochainComplex& b2, const TensorProduct& src,
                   const TensorProduct& tgt) {
  Ring r = a.ring();
  const auto& S = src.complex;
  const auto& T = tgt.complex;
  int lo = std::min(S.lo(), T.lo()), hi = std::max(S.hi(), T.hi());
  std::vector<Matrix> parts;
  for (int n = lo; n <= hi; ++n) {
    std::vector<Vec> cols(S.dim(n), Vec(r, T.dim(n)));
    for (int i = a.lo(); i <= a.hi(); ++i) {
      int j = n - i;
      if (a.dim(i) == 0 || b.dim(j) == 0) continue;
      for (std::size_t ka = 0; ka < a.dim(i); ++ka)
        for (std::size_t kb = 0; kb < b.dim(j); ++kb) {
          Vec x = f.apply(i, Vec::unit(r, a.dim(i), ka)), y = g.apply(j, Vec::unit(r, b.dim(j), kb));
          cols[src.index(i, ka, j, kb, b.dim(j))] = tensorElement(tgt, a2, b2, i, x, j, y);
        }
    }
    parts.push_back(Matrix::fromColumns(r, T.dim(n), cols));
  }
  return ChainMap::fromParts(r, lo, parts);
}

}  // namespace

PerverseComplex perverseTensor(const PerverseComplex& a, const PerverseComplex& b) {
  if (a.n() != b.n()) throw Error(ErrorKind::DimensionMismatch, "perverse complexes of different dimensions");
  if (a.ring() != b.ring()) throw Error(ErrorKind::RingMismatch, "perverse complexes over different rings");
  int n = a.n();
  Ring r = a.ring();
  const auto& all = enumeratePerversities(n);
  const Perversity inf = Perversity::infinity(n);
  const auto& ai = a.at(inf);
  const auto& bi = b.at(inf);
  TensorProduct amb = tensor(ai, bi);
  // image of A_q (x) B_q' in the ambient, for every pair
  std::map<std::pair<std::size_t, std::size_t>, std::map<int, std::vector<Vec>>> images;
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = 0; j < all.size(); ++j) {
      const auto& aq = a.at(all[i]);
      const auto& bq = b.at(all[j]);
      TensorProduct src = tensor(aq, bq);
      ChainMap m = tensorMap(a.transition(all[i], inf), b.transition(all[j], inf), aq, bq, ai, bi, src, amb);
      auto& img = images[{i, j}];
      for (int t = src.complex.lo(); t <= src.complex.hi(); ++t)
        for (std::size_t c = 0; c < src.complex.dim(t); ++c) img[t].push_back(m.apply(t, Vec::unit(r, src.complex.dim(t), c)));
    }
  std::map<Perversity, Subcomplex> subs;
  for (const auto& p : all) {
    std::map<int, Subspace> span;
    for (int t = amb.complex.lo(); t <= amb.complex.hi(); ++t) span.emplace(t, Subspace(r, amb.complex.dim(t)));
    for (std::size_t i = 0; i < all.size(); ++i)
      for (std::size_t j = 0; j < all.size(); ++j) {
        if (!oplus(all[i], all[j]).leq(p)) continue;
        for (const auto& [t, vs] : images[{i, j}])
          for (const auto& v : vs) span.at(t).add(v);
      }
    std::map<int, std::vector<Vec>> bases;
    for (auto& [t, s] : span) bases[t] = s.basis();
    subs[p] = subcomplex(amb.complex, bases);
  }
  return PerverseComplex(
      n, r, [&](const Perversity& p) { return subs.at(p).complex; },
      [&](const Perversity& p, const Perversity& q) {
        return restrictMap(ChainMap::identity(amb.complex), subs.at(p), subs.at(q));
      });
}

PerverseComplex tPerverse(const Perversity& p, Ring ring) {
  auto unit = CochainComplex::build(ring, 0, {1}, {});
  auto zero = CochainComplex::build(ring, 0, {0}, {});
  return PerverseComplex(
      p.n(), ring, [&](const Perversity& q) { return p.leq(q) ? unit : zero; },
      [&](const Perversity& x, const Perversity& y) {
        const auto& s = p.leq(x) ? unit : zero;
        const auto& t = p.leq(y) ? unit : zero;
        return p.leq(x) ? ChainMap::identity(unit) : ChainMap(s, t);
      });
}

PerverseComplex constantPerverse(int n, const CochainComplex& a) {
  return PerverseComplex(
      n, a.ring(), [&](const Perversity&) { return a; },
      [&](const Perversity&, const Perversity&) { return ChainMap::identity(a); });
}

}  // namespace ctop
