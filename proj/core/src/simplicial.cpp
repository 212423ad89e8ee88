#include "ctop/simplicial.hpp"

#include <algorithm>
#include <set>

namespace ctop {

// ---------------------------------------------------------------- complex

void SimplicialComplex::addClosure(std::vector<std::map<Simplex, std::size_t>>& acc, const Simplex& s) {
  int k = static_cast<int>(s.size()) - 1;
  if (k < 0) return;
  if (static_cast<int>(acc.size()) <= k) acc.resize(k + 1);
  if (acc[k].count(s)) return;
  acc[k].emplace(s, 0);
  if (k == 0) return;
  for (std::size_t i = 0; i < s.size(); ++i) {
    Simplex f;
    f.reserve(s.size() - 1);
    for (std::size_t j = 0; j < s.size(); ++j)
      if (j != i) f.push_back(s[j]);
    addClosure(acc, f);
  }
}

void SimplicialComplex::finalize(std::vector<std::map<Simplex, std::size_t>>& acc) {
  while (!acc.empty() && acc.back().empty()) acc.pop_back();
  byDim_.assign(acc.size(), {});
  index_.assign(acc.size(), {});
  for (std::size_t k = 0; k < acc.size(); ++k) {
    std::size_t i = 0;
    for (auto& [s, idx] : acc[k]) {  // std::map iterates lexicographically
      idx = i++;
      byDim_[k].push_back(s);
    }
    index_[k] = std::move(acc[k]);
  }
  labelIndex_.clear();
  for (std::size_t i = 0; i < labels_.size(); ++i) labelIndex_[labels_[i]] = static_cast<int>(i);
}

SimplicialComplex SimplicialComplex::fromFacets(std::vector<std::string> labels, const std::vector<Simplex>& facets) {
  SimplicialComplex k;
  std::set<std::string> seen;
  for (const auto& l : labels)
    if (!seen.insert(l).second) throw Error(ErrorKind::SchemaError, "duplicate vertex label '" + l + "'");
  k.labels_ = std::move(labels);
  std::vector<std::map<Simplex, std::size_t>> acc;
  for (std::size_t v = 0; v < k.labels_.size(); ++v) k.addClosure(acc, Simplex{static_cast<int>(v)});
  for (const auto& f : facets) {
    Simplex s = f;
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
      throw Error(ErrorKind::SchemaError, "facet with a repeated vertex");
    for (int v : s)
      if (v < 0 || v >= static_cast<int>(k.labels_.size()))
        throw Error(ErrorKind::UnknownVertex, "vertex index " + std::to_string(v) + " out of range");
    k.addClosure(acc, s);
  }
  k.finalize(acc);
  return k;
}

SimplicialComplex SimplicialComplex::fromFacets(int nVertices, const std::vector<Simplex>& facets) {
  std::vector<std::string> labels;
  for (int i = 0; i < nVertices; ++i) labels.push_back(std::to_string(i));
  return fromFacets(std::move(labels), facets);
}

SimplicialComplex SimplicialComplex::fromFacets(const std::vector<std::string>& vertexOrder,
                                                const std::vector<std::vector<std::string>>& facets) {
  std::map<std::string, int> idx;
  for (std::size_t i = 0; i < vertexOrder.size(); ++i) idx[vertexOrder[i]] = static_cast<int>(i);
  std::vector<Simplex> fs;
  for (const auto& f : facets) {
    Simplex s;
    for (const auto& l : f) {
      auto it = idx.find(l);
      if (it == idx.end()) throw Error(ErrorKind::UnknownVertex, "facet references unknown vertex '" + l + "'", l);
      s.push_back(it->second);
    }
    fs.push_back(std::move(s));
  }
  return fromFacets(vertexOrder, fs);
}

int SimplicialComplex::vertexIndex(const std::string& label) const {
  auto it = labelIndex_.find(label);
  return it == labelIndex_.end() ? -1 : it->second;
}

std::size_t SimplicialComplex::count(int k) const {
  if (k < 0 || k > dimension()) return 0;
  return byDim_[k].size();
}

const std::vector<Simplex>& SimplicialComplex::simplices(int k) const {
  static const std::vector<Simplex> none;
  if (k < 0 || k > dimension()) return none;
  return byDim_[k];
}

std::optional<std::size_t> SimplicialComplex::indexOf(const Simplex& s) const {
  int k = static_cast<int>(s.size()) - 1;
  if (k < 0 || k > dimension()) return std::nullopt;
  auto it = index_[k].find(s);
  if (it == index_[k].end()) return std::nullopt;
  return it->second;
}

std::vector<std::size_t> SimplicialComplex::fVector() const {
  std::vector<std::size_t> f;
  for (const auto& l : byDim_) f.push_back(l.size());
  return f;
}

std::size_t SimplicialComplex::simplexCount() const {
  std::size_t n = 0;
  for (const auto& l : byDim_) n += l.size();
  return n;
}

std::vector<Simplex> SimplicialComplex::facets() const {
  std::vector<Simplex> out;
  for (int k = 0; k <= dimension(); ++k)
    for (const auto& s : byDim_[k]) {
      bool maximal = true;
      if (k < dimension()) {
        for (int v = 0; v < static_cast<int>(labels_.size()) && maximal; ++v) {
          if (std::binary_search(s.begin(), s.end(), v)) continue;
          Simplex t = s;
          t.insert(std::upper_bound(t.begin(), t.end(), v), v);
          if (index_[k + 1].count(t)) maximal = false;
        }
      }
      if (maximal) out.push_back(s);
    }
  return out;
}

int SimplicialComplex::euler() const {
  int e = 0;
  for (int k = 0; k <= dimension(); ++k) e += (k % 2 == 0 ? 1 : -1) * static_cast<int>(byDim_[k].size());
  return e;
}

std::string SimplicialComplex::simplexName(const Simplex& s) const {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ',';
    out += labels_[s[i]];
  }
  return out;
}

// ---------------------------------------------------------------- maps

SimplicialMap::SimplicialMap(SimplicialComplex source, SimplicialComplex target, std::vector<int> vertexMap)
    : src_(std::move(source)), tgt_(std::move(target)), map_(std::move(vertexMap)) {
  if (map_.size() != src_.vertexCount())
    throw Error(ErrorKind::DimensionMismatch, "vertex map covers " + std::to_string(map_.size()) + " of " +
                                                  std::to_string(src_.vertexCount()) + " vertices");
  for (int v : map_)
    if (v < 0 || v >= static_cast<int>(tgt_.vertexCount()))
      throw Error(ErrorKind::UnknownVertex, "vertex map lands outside the target");
  for (int k = 0; k <= src_.dimension(); ++k)
    for (const auto& s : src_.simplices(k)) {
      Simplex img;
      for (int v : s) img.push_back(map_[v]);
      std::sort(img.begin(), img.end());
      img.erase(std::unique(img.begin(), img.end()), img.end());
      if (!tgt_.contains(img))
        throw Error(ErrorKind::NotSimplicial, "image of {" + src_.simplexName(s) + "} is not a simplex of the target",
                    src_.simplexName(s));
    }
}

SimplicialMap SimplicialMap::fromLabels(SimplicialComplex source, SimplicialComplex target,
                                        const std::map<std::string, std::string>& vertexMap) {
  std::vector<int> m(source.vertexCount(), -1);
  for (const auto& [a, b] : vertexMap) {
    int i = source.vertexIndex(a), j = target.vertexIndex(b);
    if (i < 0) throw Error(ErrorKind::UnknownVertex, "map source vertex '" + a + "' unknown", a);
    if (j < 0) throw Error(ErrorKind::UnknownVertex, "map target vertex '" + b + "' unknown", b);
    m[i] = j;
  }
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m[i] < 0) throw Error(ErrorKind::NotSimplicial, "vertex '" + source.labels()[i] + "' has no image", source.labels()[i]);
  return SimplicialMap(std::move(source), std::move(target), std::move(m));
}

SimplicialMap SimplicialMap::identity(const SimplicialComplex& k) {
  std::vector<int> m(k.vertexCount());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = static_cast<int>(i);
  return SimplicialMap(k, k, std::move(m));
}

std::optional<std::pair<Simplex, int>> SimplicialMap::image(const Simplex& s) const {
  std::vector<int> img;
  for (int v : s) img.push_back(map_[v]);
  // sign of the sorting permutation (insertion sort counting swaps)
  int swaps = 0;
  for (std::size_t i = 1; i < img.size(); ++i)
    for (std::size_t j = i; j > 0 && img[j - 1] > img[j]; --j) {
      std::swap(img[j - 1], img[j]);
      ++swaps;
    }
  if (std::adjacent_find(img.begin(), img.end()) != img.end()) return std::nullopt;
  return std::make_pair(img, swaps % 2 == 0 ? 1 : -1);
}

SimplicialMap compose(const SimplicialMap& g, const SimplicialMap& f) {
  if (!(f.target() == g.source()))
    throw Error(ErrorKind::IncompatibleDiagrams, "composing simplicial maps through different complexes");
  std::vector<int> m(f.source().vertexCount());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = g(f(static_cast<int>(i)));
  return SimplicialMap(f.source(), g.target(), std::move(m));
}

// ---------------------------------------------------------------- cochains

CochainComplex cochains(const SimplicialComplex& k, Ring ring) {
  int top = k.dimension();
  if (top < 0) return CochainComplex(ring);
  std::vector<std::size_t> dims;
  for (int i = 0; i <= top; ++i) dims.push_back(k.count(i));
  std::vector<Matrix> diffs;
  for (int i = 0; i < top; ++i) {
    Matrix d(ring, k.count(i + 1), k.count(i));
    const auto& hi = k.simplices(i + 1);
    for (std::size_t r = 0; r < hi.size(); ++r) {
      const Simplex& s = hi[r];
      for (std::size_t j = 0; j < s.size(); ++j) {
        Simplex f;
        for (std::size_t t = 0; t < s.size(); ++t)
          if (t != j) f.push_back(s[t]);
        d.set(r, *k.indexOf(f), (j % 2 == 0) ? 1L : -1L);
      }
    }
    diffs.push_back(std::move(d));
  }
  CochainComplex c = CochainComplex::build(ring, 0, std::move(dims), std::move(diffs));
  for (int i = 0; i <= top; ++i) {
    std::vector<std::string> l;
    for (const auto& s : k.simplices(i)) l.push_back(k.simplexName(s));
    c.setLabels(i, std::move(l));
  }
  return c;
}

CochainComplex standardChains(int n, Ring ring) {
  if (n < 0) throw Error(ErrorKind::DegreeOutOfRange, "standard simplex of negative dimension");
  Simplex all;
  for (int i = 0; i <= n; ++i) all.push_back(i);
  SimplicialComplex delta = SimplicialComplex::fromFacets(n + 1, {all});
  std::vector<std::size_t> dims;
  for (int k = n; k >= 0; --k) dims.push_back(delta.count(k));
  std::vector<Matrix> diffs;
  // d: degree -k -> -k+1 is the boundary of k-faces
  for (int k = n; k >= 1; --k) {
    Matrix d(ring, delta.count(k - 1), delta.count(k));
    const auto& faces = delta.simplices(k);
    for (std::size_t c = 0; c < faces.size(); ++c) {
      const Simplex& s = faces[c];
      for (std::size_t j = 0; j < s.size(); ++j) {
        Simplex f;
        for (std::size_t t = 0; t < s.size(); ++t)
          if (t != j) f.push_back(s[t]);
        d.set(*delta.indexOf(f), c, (j % 2 == 0) ? 1L : -1L);
      }
    }
    diffs.push_back(std::move(d));
  }
  return CochainComplex::build(ring, -n, std::move(dims), std::move(diffs));
}

ChainMap pullback(const SimplicialMap& f, Ring ring) {
  CochainComplex cs = cochains(f.source(), ring), ct = cochains(f.target(), ring);
  ChainMap m(ct, cs);
  for (int k = 0; k <= f.source().dimension(); ++k) {
    if (k > f.target().dimension()) continue;
    const auto& ss = f.source().simplices(k);
    for (std::size_t r = 0; r < ss.size(); ++r) {
      auto img = f.image(ss[r]);
      if (!img) continue;
      m.at(k).set(r, *f.target().indexOf(img->first), static_cast<long>(img->second));
    }
  }
  return m;
}

// ---------------------------------------------------------------- products

Vec cup(const SimplicialComplex& k, int p, const Vec& u, int q, const Vec& v) {
  if (u.size() != k.count(p) || v.size() != k.count(q))
    throw Error(ErrorKind::MixedComplexes, "cochains do not live on this complex");
  Ring ring = u.ring();
  if (v.ring() != ring) throw Error(ErrorKind::RingMismatch, "cup of cochains over different rings");
  int m = p + q;
  Vec out(ring, k.count(m));
  const auto& top = k.simplices(m);
  for (std::size_t s = 0; s < top.size(); ++s) {
    Simplex front(top[s].begin(), top[s].begin() + p + 1);
    Simplex back(top[s].begin() + p, top[s].end());
    std::size_t a = *k.indexOf(front), b = *k.indexOf(back);
    if (!u.nonzero(a) || !v.nonzero(b)) continue;
    out.set(s, u.get(a) * v.get(b));
  }
  return out;
}

void forEachCut(int m, int cutPoints, const std::function<void(const std::vector<int>&, const std::vector<int>&)>& fn) {
  if (cutPoints < 1 || cutPoints > m + 1) return;
  std::vector<int> cuts(cutPoints);
  for (int i = 0; i < cutPoints; ++i) cuts[i] = i;
  std::vector<int> even, odd;
  while (true) {
    even.clear();
    odd.clear();
    // interval t spans [cuts[t-1], cuts[t]] with cuts[-1] = 0 and cuts[cutPoints] = m
    for (int t = 0; t <= cutPoints; ++t) {
      int a = t == 0 ? 0 : cuts[t - 1];
      int b = t == cutPoints ? m : cuts[t];
      auto& dst = (t % 2 == 0) ? even : odd;
      for (int x = a; x <= b; ++x) dst.push_back(x);
    }
    fn(even, odd);
    int i = cutPoints - 1;
    while (i >= 0 && cuts[i] == m - (cutPoints - 1 - i)) --i;
    if (i < 0) break;
    ++cuts[i];
    for (int j = i + 1; j < cutPoints; ++j) cuts[j] = cuts[j - 1] + 1;
  }
}

Vec cupI(const SimplicialComplex& k, int p, const Vec& u, int q, const Vec& v, int i) {
  if (i < 0) throw Error(ErrorKind::DegreeOutOfRange, "cup_i with negative i");
  if (i == 0) return cup(k, p, u, q, v);
  if (u.ring() != Ring::F2 || v.ring() != Ring::F2)
    throw Error(ErrorKind::UnsupportedRing, "cup_i for i >= 1 is implemented over F2 only");
  if (u.size() != k.count(p) || v.size() != k.count(q))
    throw Error(ErrorKind::MixedComplexes, "cochains do not live on this complex");
  int m = p + q - i;
  Vec out(Ring::F2, k.count(m));
  if (m < 0 || i > std::min(p, q)) return out;
  const auto& top = k.simplices(m);
  for (std::size_t s = 0; s < top.size(); ++s) {
    const Simplex& sig = top[s];
    bool val = false;
    forEachCut(m, i + 1, [&](const std::vector<int>& ev, const std::vector<int>& od) {
      if (static_cast<int>(ev.size()) != p + 1 || static_cast<int>(od.size()) != q + 1) return;
      Simplex a, b;
      for (int x : ev) a.push_back(sig[x]);
      for (int x : od) b.push_back(sig[x]);
      if (u.nonzero(*k.indexOf(a)) && v.nonzero(*k.indexOf(b))) val = !val;
    });
    if (val) out.set(s, 1L);
  }
  return out;
}

// ---------------------------------------------------------------- constructions

Subdivision barycentricSubdivision(const SimplicialComplex& k) {
  Subdivision out;
  std::map<std::pair<int, std::size_t>, int> vid;
  std::vector<std::string> labels;
  for (int d = 0; d <= k.dimension(); ++d)
    for (std::size_t i = 0; i < k.count(d); ++i) {
      vid[{d, i}] = static_cast<int>(labels.size());
      out.barycenterOf.emplace_back(d, i);
      labels.push_back("[" + k.simplexName(k.simplices(d)[i]) + "]");
    }
  std::vector<Simplex> facets;
  // maximal chains: descend from each top-dimensional face through codimension-one faces
  std::function<void(const Simplex&, Simplex&)> descend = [&](const Simplex& s, Simplex& chain) {
    int d = static_cast<int>(s.size()) - 1;
    chain.push_back(vid[{d, *k.indexOf(s)}]);
    if (d == 0) {
      Simplex c = chain;
      std::sort(c.begin(), c.end());
      facets.push_back(c);
    } else {
      for (std::size_t j = 0; j < s.size(); ++j) {
        Simplex f;
        for (std::size_t t = 0; t < s.size(); ++t)
          if (t != j) f.push_back(s[t]);
        descend(f, chain);
      }
    }
    chain.pop_back();
  };
  for (const auto& f : k.facets()) {
    Simplex chain;
    descend(f, chain);
  }
  out.sd = SimplicialComplex::fromFacets(std::move(labels), facets);
  return out;
}

SimplicialComplex cone(const SimplicialComplex& k, const std::string& apex) {
  std::vector<std::string> labels = k.labels();
  labels.push_back(apex);
  int a = static_cast<int>(labels.size()) - 1;
  std::vector<Simplex> facets;
  for (const auto& f : k.facets()) {
    Simplex s = f;
    s.push_back(a);
    facets.push_back(s);
  }
  if (facets.empty()) facets.push_back({a});
  return SimplicialComplex::fromFacets(std::move(labels), facets);
}

SimplicialComplex suspension(const SimplicialComplex& k, const std::string& north, const std::string& south) {
  std::vector<std::string> labels = k.labels();
  labels.push_back(north);
  labels.push_back(south);
  int n = static_cast<int>(labels.size()) - 2, s = n + 1;
  std::vector<Simplex> facets;
  for (const auto& f : k.facets()) {
    Simplex a = f, b = f;
    a.push_back(n);
    b.push_back(s);
    facets.push_back(a);
    facets.push_back(b);
  }
  // unused labels of k only matter if k has isolated vertices, which facets() covers
  facets.push_back({n});
  facets.push_back({s});
  return SimplicialComplex::fromFacets(std::move(labels), facets);
}

SimplicialComplex disjointUnion(const SimplicialComplex& a, const SimplicialComplex& b) {
  std::vector<std::string> labels;
  for (const auto& l : a.labels()) labels.push_back("0." + l);
  for (const auto& l : b.labels()) labels.push_back("1." + l);
  int off = static_cast<int>(a.vertexCount());
  std::vector<Simplex> facets = a.facets();
  for (auto f : b.facets()) {
    for (auto& v : f) v += off;
    facets.push_back(f);
  }
  return SimplicialComplex::fromFacets(std::move(labels), facets);
}

SimplicialComplex subcomplexOf(const SimplicialComplex& k, const std::vector<Simplex>& gens) {
  SimplicialComplex s;
  s.labels_ = k.labels_;
  std::vector<std::map<Simplex, std::size_t>> acc;
  for (const auto& g : gens) {
    Simplex t = g;
    std::sort(t.begin(), t.end());
    if (!k.contains(t)) throw Error(ErrorKind::BadStrata, "generator {" + k.simplexName(t) + "} is not a simplex of the complex");
    s.addClosure(acc, t);
  }
  s.finalize(acc);
  return s;
}

}  // namespace ctop
