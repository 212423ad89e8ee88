#include "ctop/stratified.hpp"

#include <algorithm>
#include <set>

#include "ctop/spaces.hpp"

namespace ctop {

const SimplicialComplex& StratifiedComplex::skeleton(int k) const {
  if (k <= 1) return k_;
  auto it = skel_.find(k);
  return it == skel_.end() ? empty_ : it->second;
}

bool StratifiedComplex::inSkeleton(int k, const Simplex& s) const {
  if (k <= 1) return true;
  auto it = skel_.find(k);
  if (it == skel_.end()) return false;
  return it->second.contains(s);
}

int StratifiedComplex::meetDimension(int k, const Simplex& s) const {
  if (k <= 1) return static_cast<int>(s.size()) - 1;
  if (k > n_ || static_cast<std::size_t>(k) >= vertexIn_.size()) return -1;
  Simplex f;
  for (int v : s)
    if (vertexIn_[k][v]) f.push_back(v);
  // the largest face of s inside the stratum
  int best = -1;
  const auto& sk = skeleton(k);
  std::size_t m = f.size();
  for (unsigned mask = 1; mask < (1u << m); ++mask) {
    Simplex g;
    for (std::size_t i = 0; i < m; ++i)
      if (mask & (1u << i)) g.push_back(f[i]);
    if (static_cast<int>(g.size()) - 1 > best && sk.contains(g)) best = static_cast<int>(g.size()) - 1;
  }
  return best;
}

bool StratifiedComplex::trivial() const {
  for (const auto& [k, s] : skel_)
    if (s.simplexCount() > 0) return false;
  return true;
}

std::vector<bool> StratifiedComplex::openComplement(int k) const {
  std::vector<bool> out;
  for (int d = 0; d <= k_.dimension(); ++d)
    for (const auto& s : k_.simplices(d)) out.push_back(!inSkeleton(k, s));
  return out;
}

bool StratifiedComplex::fullStrata() const {
  for (const auto& [k, sk] : skel_)
    for (int d = 0; d <= k_.dimension(); ++d)
      for (const auto& s : k_.simplices(d)) {
        bool all = true;
        for (int v : s) all = all && vertexIn_[k][v];
        if (all && !sk.contains(s)) return false;
      }
  return true;
}

StratifiedComplex stratify(const SimplicialComplex& k, const std::map<int, std::vector<Simplex>>& strata) {
  StratifiedComplex x;
  x.k_ = k;
  int n = k.dimension();
  x.n_ = n;
  x.empty_ = subcomplexOf(k, {});
  if (n < 0) throw Error(ErrorKind::BadStrata, "empty complex");
  // purity: every simplex is a face of an n-simplex
  std::set<Simplex> covered;
  for (const auto& top : k.simplices(n)) {
    std::size_t m = top.size();
    for (unsigned mask = 1; mask < (1u << m); ++mask) {
      Simplex g;
      for (std::size_t i = 0; i < m; ++i)
        if (mask & (1u << i)) g.push_back(top[i]);
      covered.insert(g);
    }
  }
  for (int d = 0; d < n; ++d)
    for (const auto& s : k.simplices(d))
      if (!covered.count(s))
        throw Error(ErrorKind::BadStrata, "simplex {" + k.simplexName(s) + "} is not a face of a top simplex",
                    k.simplexName(s));
  for (const auto& [c, gens] : strata) {
    if (c < 2 || c > n)
      throw Error(ErrorKind::BadStrata, "stratum codimension must lie in 2..n (no codimension-one strata)",
                  std::to_string(c));
    for (const auto& g : gens)
      if (static_cast<int>(g.size()) - 1 > n - c)
        throw Error(ErrorKind::BadStrata, "stratum piece too large for its codimension", std::to_string(c));
  }
  x.vertexIn_.assign(n + 2, std::vector<bool>(k.vertexCount(), false));
  for (int c = 2; c <= n; ++c) {
    std::vector<Simplex> gens;
    for (const auto& [cc, g] : strata)
      if (cc >= c) gens.insert(gens.end(), g.begin(), g.end());
    auto sk = subcomplexOf(k, gens);
    if (sk.simplexCount() > 0 && sk.dimension() > n - c)
      throw Error(ErrorKind::BadStrata, "X_{n-k} has dimension above n-k", std::to_string(c));
    for (int d = 0; d <= sk.dimension(); ++d)
      for (const auto& s : sk.simplices(d))
        for (int v : s) x.vertexIn_[c][v] = true;
    x.skel_.emplace(c, std::move(sk));
  }
  return x;
}

StratifiedComplex subdivide(const StratifiedComplex& x) {
  auto sd = barycentricSubdivision(x.complex());
  const auto& k = x.complex();
  std::map<int, std::vector<Simplex>> strata;
  for (int c = 2; c <= x.dimension(); ++c) {
    // simplices of sd (chains of faces) whose faces all lie in X_{n-c}, kept at their own codimension
    std::vector<Simplex> gens;
    for (int d = 0; d <= sd.sd.dimension(); ++d)
      for (const auto& s : sd.sd.simplices(d)) {
        bool in = true, inNext = c + 1 <= x.dimension();
        for (int v : s) {
          auto [dim, idx] = sd.barycenterOf[v];
          const Simplex& f = k.simplices(dim)[idx];
          in = in && x.inSkeleton(c, f);
          inNext = inNext && x.inSkeleton(c + 1, f);
        }
        if (in && !inNext) gens.push_back(s);
      }
    if (!gens.empty()) strata[c] = gens;
  }
  return stratify(sd.sd, strata);
}

namespace {

// boundary matrix C_i -> C_{i-1} with the usual alternating signs
Matrix boundary(const SimplicialComplex& k, int i, Ring r) {
  Matrix m(r, i >= 1 ? k.count(i - 1) : 0, k.count(i));
  if (i < 1) return m;
  const auto& s = k.simplices(i);
  for (std::size_t j = 0; j < s.size(); ++j)
    for (std::size_t f = 0; f < s[j].size(); ++f) {
      Simplex face;
      for (std::size_t t = 0; t < s[j].size(); ++t)
        if (t != f) face.push_back(s[j][t]);
      m.set(*k.indexOf(face), j, Rational((f % 2 == 0) ? 1 : -1));
    }
  return m;
}

}  // namespace

std::map<int, std::size_t> intersectionHomology(const StratifiedComplex& x0, const Perversity& p, Ring ring) {
  if (!p.isInfinite() && p.n() != x0.dimension())
    throw Error(ErrorKind::InvalidPerversity, "perversity dimension does not match the space", p.str());
  StratifiedComplex x = x0.fullStrata() ? x0 : subdivide(x0);
  const auto& k = x.complex();
  int n = x.dimension();
  auto allowable = [&](const Simplex& s) {
    int i = static_cast<int>(s.size()) - 1;
    if (p.isInfinite()) return !x.inSkeleton(2, s) && x.meetDimension(2, s) < 0;
    for (int c = 2; c <= n; ++c) {
      int m = x.meetDimension(c, s);
      if (m >= 0 && m > i - c + p(c)) return false;
    }
    return true;
  };
  std::vector<Subspace> ic(n + 2);
  for (int i = 0; i <= n; ++i) {
    std::vector<Vec> gens;
    for (std::size_t j = 0; j < k.count(i); ++j)
      if (allowable(k.simplices(i)[j])) gens.push_back(Vec::unit(ring, k.count(i), j));
    ic[i] = Subspace::span(ring, k.count(i), gens);
  }
  std::vector<Subspace> chains(n + 1);
  for (int i = 0; i <= n; ++i) {
    if (i == 0) {
      chains[i] = ic[i];
      continue;
    }
    chains[i] = preimage(boundary(k, i, ring), ic[i], ic[i - 1]);
  }
  std::map<int, std::size_t> out;
  for (int i = 0; i <= n; ++i) {
    Subspace z = i == 0 ? chains[0] : preimage(boundary(k, i, ring), chains[i], Subspace(ring, k.count(i - 1)));
    std::size_t b = i < n ? imageOf(boundary(k, i + 1, ring), chains[i + 1]).dim() : 0;
    if (z.dim() - b) out[i] = z.dim() - b;
  }
  return out;
}

namespace spaces {

StratifiedComplex pinchedTorusStratified() {
  auto k = pinchedTorus();
  return stratify(k, {{2, {{k.vertexIndex("P")}}}});
}

StratifiedComplex suspendedTorus() {
  auto k = suspension(torus());
  return stratify(k, {{3, {{k.vertexIndex("N")}, {k.vertexIndex("S")}}}});
}

StratifiedComplex trivialStratification(const SimplicialComplex& k) { return stratify(k, {}); }

}  // namespace spaces

}  // namespace ctop
