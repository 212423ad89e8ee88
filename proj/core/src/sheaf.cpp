#include "ctop/sheaf.hpp"

#include <algorithm>
#include <functional>

#include "ctop/parallel.hpp"

namespace ctop {

namespace {

std::vector<Simplex> cellList(const SimplicialComplex& k) {
  std::vector<Simplex> out;
  for (int d = 0; d <= k.dimension(); ++d)
    for (const auto& s : k.simplices(d)) out.push_back(s);
  return out;
}

std::size_t cellIndex(const SimplicialComplex& k, const Simplex& s) {
  auto i = k.indexOf(s);
  if (!i) throw Error(ErrorKind::DimensionMismatch, "not a simplex of the complex");
  std::size_t off = 0;
  for (int d = 0; d + 1 < static_cast<int>(s.size()); ++d) off += k.count(d);
  return off + *i;
}

std::vector<std::vector<std::size_t>> faceLists(const SimplicialComplex& k, const std::vector<Simplex>& cells) {
  std::vector<std::vector<std::size_t>> out(cells.size());
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const auto& s = cells[c];
    std::size_t n = s.size();
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      Simplex f;
      for (std::size_t i = 0; i < n; ++i)
        if (mask & (1u << i)) f.push_back(s[i]);
      out[c].push_back(cellIndex(k, f));
    }
    std::sort(out[c].begin(), out[c].end());
  }
  return out;
}

bool sameMap(const ChainMap& a, const ChainMap& b) {
  for (int k = std::min(a.lo(), b.lo()); k <= std::max(a.hi(), b.hi()); ++k) {
    Matrix x = a.get(k), y = b.get(k);
    if (x.isZero() && y.isZero()) continue;
    if (x != y) return false;
  }
  return true;
}

// holim over an upward-closed family of faces (closed under cofaces within the family)
LocalHolim holimOver(const PosetSheaf& f, const std::vector<bool>& set) {
  std::vector<std::size_t> verts;
  for (std::size_t c = 0; c < f.cellCount(); ++c)
    if (set[c]) verts.push_back(c);
  std::map<std::size_t, int> pos;
  for (std::size_t i = 0; i < verts.size(); ++i) pos[verts[i]] = static_cast<int>(i);
  // maximal flags, stepping through codimension-one cofaces
  std::vector<Simplex> chains;
  std::function<void(Simplex&)> grow = [&](Simplex& ch) {
    bool extended = false;
    std::size_t last = verts[ch.back()];
    for (std::size_t g : f.cofacesOf(last)) {
      if (!set[g] || f.cellDim(g) != f.cellDim(last) + 1) continue;
      ch.push_back(pos.at(g));
      grow(ch);
      ch.pop_back();
      extended = true;
    }
    if (!extended) chains.push_back(ch);
  };
  for (std::size_t i = 0; i < verts.size(); ++i) {
    bool minimal = true;
    for (std::size_t g : f.facesOf(verts[i]))
      if (g != verts[i] && set[g]) minimal = false;
    if (!minimal) continue;
    Simplex ch{static_cast<int>(i)};
    grow(ch);
  }
  std::vector<std::string> labels;
  for (auto c : verts) labels.push_back(std::to_string(c));
  auto index = SimplicialComplex::fromFacets(labels, chains);
  std::vector<std::size_t> objectOf;
  for (int k = 0; k <= index.dimension(); ++k)
    for (const auto& s : index.simplices(k)) objectOf.push_back(static_cast<std::size_t>(s.back()));
  std::vector<CochainComplex> objects;
  std::vector<CupIAlgebra::Evaluator> products;
  bool prods = !verts.empty();
  for (auto c : verts) {
    objects.push_back(f.stalk(c));
    products.push_back(f.product(c));
    if (!f.product(c)) prods = false;
  }
  auto d = std::make_shared<IndexedDiagram>(
      f.ring(), index, objectOf, objects,
      [&](std::size_t i, std::size_t j) { return f.restriction(verts[i], verts[j]); },
      prods ? products : std::vector<CupIAlgebra::Evaluator>{});
  return {std::make_shared<Normalization>(d), verts};
}

}  // namespace

PosetSheaf::PosetSheaf(SimplicialComplex k, Ring ring, std::vector<bool> domain)
    : k_(std::move(k)), ring_(ring), cells_(cellList(k_)), domain_(std::move(domain)) {
  if (domain_.empty()) domain_.assign(cells_.size(), true);
  if (domain_.size() != cells_.size()) throw Error(ErrorKind::DimensionMismatch, "domain flags must cover every face");
  if (!isOpen(k_, domain_)) throw Error(ErrorKind::NotOpen, "domain is not upward closed");
  faces_ = faceLists(k_, cells_);
  cofaces_.assign(cells_.size(), {});
  for (std::size_t c = 0; c < cells_.size(); ++c)
    for (auto f : faces_[c]) cofaces_[f].push_back(c);
  stalks_.assign(cells_.size(), CochainComplex(ring_));
  products_.assign(cells_.size(), {});
  id_.assign(cells_.size(), ChainMap::identity(CochainComplex(ring_)));
}

std::size_t PosetSheaf::cellOf(const Simplex& s) const { return cellIndex(k_, s); }

bool PosetSheaf::wholeSpace() const {
  return std::all_of(domain_.begin(), domain_.end(), [](bool b) { return b; });
}

bool PosetSheaf::isFace(std::size_t f, std::size_t c) const {
  return std::binary_search(faces_[c].begin(), faces_[c].end(), f);
}

void PosetSheaf::setStalk(std::size_t c, CochainComplex a, CupIAlgebra::Evaluator product) {
  if (!domain_.at(c)) throw Error(ErrorKind::NotOpen, "stalk outside the domain", cellName(c));
  if (a.ring() != ring_) throw Error(ErrorKind::RingMismatch, "stalk over the wrong ring", cellName(c));
  id_[c] = ChainMap::identity(a);
  stalks_[c] = std::move(a);
  products_[c] = std::move(product);
}

void PosetSheaf::setRestriction(std::size_t f, std::size_t c, ChainMap m) {
  if (f == c || !isFace(f, c)) throw Error(ErrorKind::NotFunctorial, "restriction must go to a coface", cellName(f) + "->" + cellName(c));
  if (!domain_[f] || !domain_[c]) throw Error(ErrorKind::NotOpen, "restriction outside the domain", cellName(f) + "->" + cellName(c));
  res_[{f, c}] = std::move(m);
}

const ChainMap& PosetSheaf::restriction(std::size_t f, std::size_t c) const {
  if (f == c) return id_[c];
  auto it = res_.find({f, c});
  if (it == res_.end()) throw Error(ErrorKind::NotFunctorial, "missing restriction", cellName(f) + "->" + cellName(c));
  return it->second;
}

bool PosetSheaf::hasProducts() const {
  for (std::size_t c = 0; c < cells_.size(); ++c)
    if (domain_[c] && !products_[c]) return false;
  return true;
}

void PosetSheaf::checkFunctorial() const {
  for (std::size_t c = 0; c < cells_.size(); ++c) {
    if (!domain_[c]) continue;
    for (auto f : faces_[c]) {
      if (f == c) continue;
      const auto& m = restriction(f, c);
      if (!isChainMap(m, stalks_[f], stalks_[c]))
        throw Error(ErrorKind::NotFunctorial, "restriction is not a cochain map", cellName(f) + "->" + cellName(c));
      for (auto g : faces_[c]) {
        if (g == c || g == f || !isFace(f, g)) continue;
        if (!sameMap(compose(restriction(g, c), restriction(f, g)), m))
          throw Error(ErrorKind::NotFunctorial, "restrictions do not compose",
                      cellName(f) + "->" + cellName(g) + "->" + cellName(c));
      }
    }
  }
}

PosetSheaf PosetSheaf::restrictTo(const std::vector<bool>& open) const {
  for (std::size_t c = 0; c < cells_.size(); ++c)
    if (open[c] && !domain_[c]) throw Error(ErrorKind::NotOpen, "restriction beyond the domain", cellName(c));
  PosetSheaf out(k_, ring_, open);
  for (std::size_t c = 0; c < cells_.size(); ++c) {
    if (!open[c]) continue;
    out.stalks_[c] = stalks_[c];
    out.products_[c] = products_[c];
    out.id_[c] = id_[c];
  }
  for (const auto& [fc, m] : res_)
    if (open[fc.first] && open[fc.second]) out.res_.emplace(fc, m);
  return out;
}

std::vector<bool> allCells(const SimplicialComplex& k) { return std::vector<bool>(k.simplexCount(), true); }

bool isOpen(const SimplicialComplex& k, const std::vector<bool>& set) {
  auto cells = cellList(k);
  if (set.size() != cells.size()) return false;
  auto faces = faceLists(k, cells);
  for (std::size_t c = 0; c < cells.size(); ++c)
    for (auto f : faces[c])
      if (set[f] && !set[c]) return false;
  return true;
}

std::vector<bool> starOf(const SimplicialComplex& k, std::size_t cell) {
  auto cells = cellList(k);
  std::vector<bool> out(cells.size(), false);
  for (std::size_t c = 0; c < cells.size(); ++c)
    out[c] = std::includes(cells[c].begin(), cells[c].end(), cells[cell].begin(), cells[cell].end());
  return out;
}

PosetSheaf constantSheaf(const SimplicialComplex& k, Ring ring, std::vector<bool> domain) {
  PosetSheaf f(k, ring, std::move(domain));
  auto r = CochainComplex::build(ring, 0, {1}, {});
  CupIAlgebra::Evaluator prod = [ring](int i, int p, const Vec& a, int q, const Vec& b) {
    int deg = p + q - i;
    Vec out(ring, deg == 0 ? 1 : 0);
    if (deg == 0 && p == 0 && q == 0) out.set(0, a.get(0) * b.get(0));
    return out;
  };
  for (std::size_t c = 0; c < f.cellCount(); ++c)
    if (f.inDomain(c)) f.setStalk(c, r, prod);
  for (std::size_t c = 0; c < f.cellCount(); ++c) {
    if (!f.inDomain(c)) continue;
    for (auto g : f.facesOf(c))
      if (g != c && f.inDomain(g)) f.setRestriction(g, c, ChainMap::identity(r));
  }
  return f;
}

PosetSheaf skyscraper(const SimplicialComplex& k, std::size_t cell, const CochainComplex& a) {
  PosetSheaf f(k, a.ring());
  f.setStalk(cell, a);
  for (std::size_t c = 0; c < f.cellCount(); ++c)
    for (auto g : f.facesOf(c))
      if (g != c) f.setRestriction(g, c, ChainMap(f.stalk(g), f.stalk(c)));
  return f;
}

LocalHolim localHolim(const PosetSheaf& f, std::size_t cell, const std::vector<bool>& open) {
  auto st = starOf(f.complex(), cell);
  for (std::size_t c = 0; c < st.size(); ++c) {
    st[c] = st[c] && open[c];
    if (st[c] && !f.inDomain(c)) throw Error(ErrorKind::NotOpen, "holim beyond the domain", f.cellName(c));
  }
  return holimOver(f, st);
}

Normalization sectionsByChains(const PosetSheaf& f) { return *holimOver(f, f.domain()).n; }

Normalization sectionsCellular(const PosetSheaf& f) {
  if (!f.wholeSpace()) throw Error(ErrorKind::NotOpen, "the cellular model needs a sheaf on the whole space");
  std::vector<std::size_t> objectOf(f.cellCount());
  std::vector<CochainComplex> objects;
  std::vector<CupIAlgebra::Evaluator> products;
  for (std::size_t c = 0; c < f.cellCount(); ++c) {
    objectOf[c] = c;
    objects.push_back(f.stalk(c));
    products.push_back(f.product(c));
  }
  auto d = std::make_shared<IndexedDiagram>(
      f.ring(), f.complex(), objectOf, objects, [&](std::size_t i, std::size_t j) { return f.restriction(i, j); },
      f.hasProducts() ? products : std::vector<CupIAlgebra::Evaluator>{});
  return Normalization(d);
}

std::map<int, std::size_t> hypercohomology(const PosetSheaf& f) {
  Normalization n = f.wholeSpace() ? sectionsCellular(f) : sectionsByChains(f);
  std::map<int, std::size_t> out;
  for (auto [k, d] : Cohomology(n.total()).dims())
    if (d) out[k] = d;
  return out;
}

Pushforward pushforwardOpen(const PosetSheaf& f, std::vector<bool> target) {
  const auto& k = f.complex();
  if (target.empty()) target = allCells(k);
  if (!isOpen(k, target)) throw Error(ErrorKind::NotOpen, "target is not upward closed");
  for (std::size_t c = 0; c < f.cellCount(); ++c)
    if (f.inDomain(c) && !target[c]) throw Error(ErrorKind::NotOpen, "domain is not inside the target", f.cellName(c));
  Pushforward out{PosetSheaf(k, f.ring(), target), std::vector<LocalHolim>(f.cellCount())};
  bool prods = f.hasProducts() && f.ring() == Ring::F2;
  // stalks are independent; each index fills its own slot
  parallelFor(f.cellCount(), [&](std::size_t c) {
    if (target[c]) out.holim[c] = localHolim(f, c, f.domain());
  });
  for (std::size_t c = 0; c < f.cellCount(); ++c) {
    if (!target[c]) continue;
    auto n = out.holim[c].n;
    CupIAlgebra::Evaluator prod;
    if (prods) prod = [n](int i, int p, const Vec& a, int q, const Vec& b) { return n->cupL(p, a, q, b, i); };
    out.sheaf.setStalk(c, n->total(), prod);
  }
  Ring ring = f.ring();
  for (std::size_t c = 0; c < f.cellCount(); ++c) {
    if (!target[c]) continue;
    const auto& hc = out.holim[c];
    const auto& dc = hc.n->diagram();
    std::map<std::size_t, int> posC;
    for (std::size_t i = 0; i < hc.vertexCell.size(); ++i) posC[hc.vertexCell[i]] = static_cast<int>(i);
    for (auto g : f.cofacesOf(c)) {
      if (g == c) continue;
      // stalk(c) -> stalk(g): keep the chains of faces lying in st(g)
      const auto& hg = out.holim[g];
      const auto& dg = hg.n->diagram();
      const auto& A = hc.n->total();
      const auto& B = hg.n->total();
      int lo = std::min(A.lo(), B.lo()), hi = std::max(A.hi(), B.hi());
      std::vector<Matrix> parts;
      for (int t = lo; t <= hi; ++t) parts.emplace_back(ring, B.dim(t), A.dim(t));
      for (std::size_t cg = 0; cg < dg.cellCount(); ++cg) {
        Simplex s;
        for (int v : dg.cell(cg)) s.push_back(posC.at(hg.vertexCell[v]));
        std::size_t cc = dc.cellOf(s);
        for (int t = lo; t <= hi; ++t) {
          auto rg = hg.n->offset(t, cg);
          auto rc = hc.n->offset(t, cc);
          if (!rg || !rc) continue;
          std::size_t m = dg.object(cg).dim(t - dg.cellDim(cg));
          for (std::size_t i = 0; i < m; ++i) parts[t - lo].set(*rg + i, *rc + i, 1);
        }
      }
      out.sheaf.setRestriction(c, g, ChainMap::fromParts(ring, lo, parts));
    }
  }
  return out;
}

ChainMap unitMap(const PosetSheaf& f, std::size_t cell, const LocalHolim& h) {
  const auto& a = f.stalk(cell);
  const auto& b = h.n->total();
  const auto& d = h.n->diagram();
  Ring ring = f.ring();
  int lo = std::min(a.lo(), b.lo()), hi = std::max(a.hi(), b.hi());
  std::vector<Matrix> parts;
  for (int t = lo; t <= hi; ++t) {
    Matrix m(ring, b.dim(t), a.dim(t));
    for (std::size_t v = 0; v < h.vertexCell.size(); ++v) {
      auto off = h.n->offset(t, d.cellOf({static_cast<int>(v)}));
      if (!off) continue;
      Matrix r = f.restriction(cell, h.vertexCell[v]).get(t);
      for (std::size_t i = 0; i < r.rows(); ++i) m.row(*off + i).addInto(0, r.row(i));
    }
    parts.push_back(std::move(m));
  }
  return ChainMap::fromParts(ring, lo, parts);
}

}  // namespace ctop
