#include "ctop/codiagram.hpp"

#include <algorithm>
#include <set>

namespace ctop {

namespace {

// M[r0.., c0..] += sign * B
void addBlock(Matrix& m, std::size_t r0, std::size_t c0, const Matrix& b, int sign) {
  for (std::size_t i = 0; i < b.rows(); ++i) {
    if (b.row(i).isZero()) continue;
    if (sign > 0 || m.ring() == Ring::F2) {
      m.row(r0 + i).addInto(c0, b.row(i));
    } else {
      Vec neg = b.row(i);
      neg.scale(Rational(-1));
      m.row(r0 + i).addInto(c0, neg);
    }
  }
}

Simplex dropAt(const Simplex& s, std::size_t k) {
  Simplex out;
  out.reserve(s.size() - 1);
  for (std::size_t i = 0; i < s.size(); ++i)
    if (i != k) out.push_back(s[i]);
  return out;
}

// every nonempty proper subsimplex of s, with all of s's vertices kept in order
void forEachFace(const Simplex& s, const std::function<void(const Simplex&)>& fn) {
  std::size_t n = s.size();
  if (n > 20) throw Error(ErrorKind::ComputeError, "index simplex too large");
  for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
    Simplex f;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) f.push_back(s[i]);
    fn(f);
  }
}

}  // namespace

// ---------------------------------------------------------------- IndexedDiagram

IndexedDiagram::IndexedDiagram(Ring ring, SimplicialComplex index, std::vector<std::size_t> objectOf,
                               std::vector<CochainComplex> objects, const ArrowFn& arrow,
                               std::vector<CupIAlgebra::Evaluator> products)
    : ring_(ring), index_(std::move(index)), objectOf_(std::move(objectOf)), objects_(std::move(objects)),
      products_(std::move(products)) {
  for (int k = 0; k <= index_.dimension(); ++k)
    for (const auto& s : index_.simplices(k)) cells_.push_back(s);
  if (objectOf_.size() != cells_.size())
    throw Error(ErrorKind::DimensionMismatch, "one object index per simplex of the index complex is required");
  for (auto o : objectOf_)
    if (o >= objects_.size()) throw Error(ErrorKind::DimensionMismatch, "object index out of range");
  for (const auto& o : objects_)
    if (o.ring() != ring_) throw Error(ErrorKind::RingMismatch, "diagram objects over different rings");
  if (!products_.empty() && products_.size() != objects_.size())
    throw Error(ErrorKind::DimensionMismatch, "one product per object is required");
  for (const auto& o : objects_) identities_.push_back(ChainMap::identity(o));
  for (std::size_t c = 0; c < cells_.size(); ++c) {
    std::size_t to = objectOf_[c];
    forEachFace(cells_[c], [&](const Simplex& f) {
      std::size_t from = objectOf_[cellOf(f)];
      if (from == to || arrows_.count({from, to})) return;
      arrows_.emplace(std::make_pair(from, to), arrow(from, to));
    });
  }
}

std::size_t IndexedDiagram::cellOf(const Simplex& s) const {
  auto i = index_.indexOf(s);
  if (!i) throw Error(ErrorKind::DimensionMismatch, "not a simplex of the index complex");
  std::size_t off = 0;
  for (int k = 0; k + 1 < static_cast<int>(s.size()); ++k) off += index_.count(k);
  return off + *i;
}

const ChainMap& IndexedDiagram::arrow(std::size_t face, std::size_t cell) const {
  std::size_t from = objectOf_[face], to = objectOf_[cell];
  if (from == to) return identities_[from];
  return arrows_.at({from, to});
}

// ---------------------------------------------------------------- Normalization

Normalization::Normalization(std::shared_ptr<const IndexedDiagram> d) : d_(std::move(d)) {
  const auto& D = *d_;
  Ring ring = D.ring();
  int lo = 0, hi = -1;
  bool any = false;
  for (std::size_t c = 0; c < D.cellCount(); ++c) {
    const auto& o = D.object(c);
    if (o.empty()) continue;
    int m = D.cellDim(c);
    if (!any) {
      lo = o.lo() + m;
      hi = o.hi() + m;
      any = true;
    }
    lo = std::min(lo, o.lo() + m);
    hi = std::max(hi, o.hi() + m);
  }
  std::vector<std::size_t> dims;
  for (int t = lo; t <= hi; ++t) {
    std::size_t off = 0;
    auto& row = offset_[t];
    for (std::size_t c = 0; c < D.cellCount(); ++c) {
      std::size_t k = D.object(c).dim(t - D.cellDim(c));
      if (k == 0) continue;
      row[c] = off;
      off += k;
    }
    dims.push_back(off);
  }
  std::vector<Matrix> diffs;
  for (int t = lo; t < hi; ++t) {
    Matrix m(ring, dims[t + 1 - lo], dims[t - lo]);
    for (const auto& [c, roff] : offset_[t + 1]) {
      const Simplex& s = D.cell(c);
      int dm = D.cellDim(c);
      int deg = t + 1 - dm;
      if (auto col = offset(t, c)) addBlock(m, roff, *col, D.object(c).d(deg - 1), dm % 2 == 0 ? 1 : -1);
      if (dm == 0) continue;
      for (std::size_t k = 0; k < s.size(); ++k) {
        std::size_t f = D.cellOf(dropAt(s, k));
        auto col = offset(t, f);
        if (!col) continue;
        addBlock(m, roff, *col, D.arrow(f, c).get(deg), k % 2 == 0 ? 1 : -1);
      }
    }
    diffs.push_back(std::move(m));
  }
  if (!any) total_ = CochainComplex(ring);
  else total_ = CochainComplex::build(ring, lo, dims, diffs);
}

std::optional<std::size_t> Normalization::offset(int t, std::size_t cell) const {
  auto r = offset_.find(t);
  if (r == offset_.end()) return std::nullopt;
  auto it = r->second.find(cell);
  if (it == r->second.end()) return std::nullopt;
  return it->second;
}

Vec Normalization::component(int t, std::size_t cell, const Vec& x) const {
  std::size_t k = d_->object(cell).dim(t - d_->cellDim(cell));
  auto off = offset(t, cell);
  if (!off) return Vec(ring(), k);
  return x.slice(*off, k);
}

void Normalization::addComponent(int t, std::size_t cell, Vec& x, const Vec& piece) const {
  auto off = offset(t, cell);
  if (!off) {
    if (!piece.isZero()) throw Error(ErrorKind::DegreeOutOfRange, "component outside the total complex");
    return;
  }
  x.addInto(*off, piece);
}

Vec Normalization::columnPart(int t, const Vec& x, int col) const {
  Vec out(ring(), x.size());
  auto r = offset_.find(t);
  if (r == offset_.end()) return out;
  for (const auto& [c, off] : r->second) {
    if (d_->cellDim(c) != col) continue;
    out.place(off, x.slice(off, d_->object(c).dim(t - col)));
  }
  return out;
}

Vec Normalization::cupL(int a, const Vec& x, int b, const Vec& y, int l, int cutsFilter) const {
  if (ring() != Ring::F2) throw Error(ErrorKind::UnsupportedRing, "cup_l on normalizations is defined over F2");
  if (!d_->hasProducts()) throw Error(ErrorKind::NotNice, "diagram objects carry no cup_i structure");
  const auto& D = *d_;
  int t = a + b - l;
  Vec out(Ring::F2, total_.dim(t));
  if (l < 0) return out;
  auto r = offset_.find(t);
  if (r == offset_.end()) return out;
  for (const auto& [c, roff] : r->second) {
    const Simplex& s = D.cell(c);
    int m = D.cellDim(c);
    Vec acc(Ring::F2, D.object(c).dim(t - m));
    for (int l2 = 0; l2 <= std::min(l, m); ++l2) {
      if (cutsFilter >= 0 && l2 != cutsFilter) continue;
      int l1 = l - l2;
      forEachCut(m, l2 + 1, [&](const std::vector<int>& ev, const std::vector<int>& od) {
        Simplex f, g;
        for (int v : ev) f.push_back(s[v]);
        for (int v : od) g.push_back(s[v]);
        int df = static_cast<int>(f.size()) - 1, dg = static_cast<int>(g.size()) - 1;
        std::size_t fc = D.cellOf(f), gc = D.cellOf(g);
        int pa = a - df, pb = b - dg;
        if (!offset(a, fc) || !offset(b, gc)) return;
        Vec xf = component(a, fc, x), yg = component(b, gc, y);
        if (xf.isZero() || yg.isZero()) return;
        Vec xs = D.arrow(fc, c).apply(pa, xf);
        Vec ys = D.arrow(gc, c).apply(pb, yg);
        Vec v = (l2 % 2 == 1) ? D.product(c)(l1, pb, ys, pa, xs) : D.product(c)(l1, pa, xs, pb, ys);
        if (v.size() == 0) return;
        acc += v;
      });
    }
    out.place(roff, acc);
  }
  return out;
}

CupIAlgebra Normalization::algebra() const {
  if (!d_->hasProducts()) throw Error(ErrorKind::NotNice, "diagram objects carry no cup_i structure");
  auto self = std::make_shared<Normalization>(*this);
  return CupIAlgebra(total_, [self](int i, int p, const Vec& a, int q, const Vec& b) {
    return self->cupL(p, a, q, b, i);
  });
}

// ---------------------------------------------------------------- cubical

CubicalCodiagram::CubicalCodiagram(Ring ring, int n) : ring_(ring), n_(n) {
  if (n < 0 || n > 10) throw Error(ErrorKind::DimensionMismatch, "cube arity out of range");
}

std::vector<unsigned> CubicalCodiagram::subsets(int n) {
  std::vector<unsigned> out;
  for (unsigned a = 1; a < (1u << (n + 1)); ++a) out.push_back(a);
  std::stable_sort(out.begin(), out.end(),
                   [](unsigned x, unsigned y) { return __builtin_popcount(x) < __builtin_popcount(y); });
  return out;
}

std::string CubicalCodiagram::subsetName(unsigned a) {
  std::string s;
  for (int i = 0; i < 32; ++i)
    if (a & (1u << i)) s += std::to_string(i);
  return s;
}

unsigned CubicalCodiagram::parseSubset(const std::string& s, int n) {
  unsigned a = 0;
  for (char ch : s) {
    if (ch < '0' || ch > '9' || ch - '0' > n) throw Error(ErrorKind::ParseError, "bad subset name '" + s + "'");
    unsigned bit = 1u << (ch - '0');
    if (a & bit) throw Error(ErrorKind::ParseError, "repeated index in subset '" + s + "'");
    a |= bit;
  }
  if (a == 0) throw Error(ErrorKind::ParseError, "empty subset");
  return a;
}

void CubicalCodiagram::setObject(unsigned a, CochainComplex c, CupIAlgebra::Evaluator product) {
  if (c.ring() != ring_) throw Error(ErrorKind::RingMismatch, "object over the wrong ring", subsetName(a));
  objects_[a] = std::move(c);
  if (product) products_[a] = std::move(product);
}

void CubicalCodiagram::setFiltration(unsigned a, FilteredComplex w) {
  if (!objects_.count(a)) setObject(a, w.complex());
  filtrations_[a] = std::move(w);
}

void CubicalCodiagram::setArrow(unsigned a, unsigned b, ChainMap f) {
  if ((a & b) != a || __builtin_popcount(b) != __builtin_popcount(a) + 1)
    throw Error(ErrorKind::NotFunctorial, "generator arrows go from a subset to a one-larger superset",
                subsetName(a) + "->" + subsetName(b));
  gen_[{a, b}] = std::move(f);
}

bool CubicalCodiagram::hasProducts() const {
  return !objects_.empty() && products_.size() == objects_.size();
}

ChainMap CubicalCodiagram::arrow(unsigned a, unsigned b) const {
  if (a == b) return ChainMap::identity(objects_.at(a));
  if ((a & b) != a) throw Error(ErrorKind::NotFunctorial, "no arrow between incomparable subsets");
  unsigned cur = a;
  ChainMap acc;
  bool first = true;
  for (int i = 0; i <= n_; ++i) {
    unsigned bit = 1u << i;
    if (!(b & bit) || (a & bit)) continue;
    auto it = gen_.find({cur, cur | bit});
    if (it == gen_.end())
      throw Error(ErrorKind::NotFunctorial, "missing arrow", subsetName(cur) + "->" + subsetName(cur | bit));
    acc = first ? it->second : compose(it->second, acc);
    first = false;
    cur |= bit;
  }
  return acc;
}

void CubicalCodiagram::checkFunctorial() const {
  for (unsigned a : subsets(n_))
    if (!objects_.count(a)) throw Error(ErrorKind::NotFunctorial, "missing object", subsetName(a));
  for (const auto& [ab, f] : gen_) {
    if (!isChainMap(f, objects_.at(ab.first), objects_.at(ab.second)))
      throw Error(ErrorKind::NotFunctorial, "arrow is not a cochain map",
                  subsetName(ab.first) + "->" + subsetName(ab.second));
  }
  for (unsigned a : subsets(n_))
    for (int i = 0; i <= n_; ++i)
      for (int j = i + 1; j <= n_; ++j) {
        unsigned bi = 1u << i, bj = 1u << j;
        if ((a & bi) || (a & bj)) continue;
        auto get = [&](unsigned x, unsigned y) -> const ChainMap& {
          auto it = gen_.find({x, y});
          if (it == gen_.end())
            throw Error(ErrorKind::NotFunctorial, "missing arrow", subsetName(x) + "->" + subsetName(y));
          return it->second;
        };
        ChainMap p1 = compose(get(a | bi, a | bi | bj), get(a, a | bi));
        ChainMap p2 = compose(get(a | bj, a | bi | bj), get(a, a | bj));
        bool same = true;
        for (int n = std::min(p1.lo(), p2.lo()); n <= std::max(p1.hi(), p2.hi()); ++n)
          if (p1.get(n) != p2.get(n) && !(p1.get(n).isZero() && p2.get(n).isZero())) same = false;
        if (!same)
          throw Error(ErrorKind::NotFunctorial, "square does not commute",
                      subsetName(a) + "->" + subsetName(a | bi | bj));
      }
}

std::shared_ptr<IndexedDiagram> CubicalCodiagram::indexed() const {
  checkFunctorial();
  std::vector<Simplex> top{Simplex{}};
  for (int i = 0; i <= n_; ++i) top[0].push_back(i);
  auto index = SimplicialComplex::fromFacets(n_ + 1, top);
  std::vector<unsigned> subsetOfObj;
  std::vector<std::size_t> objectOf;
  std::vector<CochainComplex> objs;
  std::vector<CupIAlgebra::Evaluator> prods;
  for (int k = 0; k <= n_; ++k)
    for (const auto& s : index.simplices(k)) {
      unsigned a = 0;
      for (int v : s) a |= 1u << v;
      objectOf.push_back(objs.size());
      subsetOfObj.push_back(a);
      objs.push_back(objects_.at(a));
      if (hasProducts()) prods.push_back(products_.at(a));
    }
  auto self = *this;
  return std::make_shared<IndexedDiagram>(
      ring_, index, objectOf, objs,
      [&](std::size_t i, std::size_t j) { return self.arrow(subsetOfObj[i], subsetOfObj[j]); }, prods);
}

Normalization normalize(const CubicalCodiagram& d) { return Normalization(d.indexed()); }

namespace {

unsigned maskOf(const Simplex& s) {
  unsigned a = 0;
  for (int v : s) a |= 1u << v;
  return a;
}

FilteredComplex diagonal(const CubicalCodiagram& d, const Normalization& n, bool shiftByColumn) {
  if (!d.hasFiltrations()) throw Error(ErrorKind::NotFiltered, "every object needs a filtration");
  for (unsigned a : CubicalCodiagram::subsets(d.arity()))
    for (unsigned b : CubicalCodiagram::subsets(d.arity())) {
      if ((a & b) != a || __builtin_popcount(b) != __builtin_popcount(a) + 1) continue;
      if (!isFilteredMap(d.arrow(a, b), d.filtration(a), d.filtration(b)))
        throw Error(ErrorKind::NotFiltered, "arrow does not preserve the filtration",
                    CubicalCodiagram::subsetName(a) + "->" + CubicalCodiagram::subsetName(b));
    }
  const auto& D = n.diagram();
  const auto& tot = n.total();
  int lo = 0, hi = 0;
  bool first = true;
  for (std::size_t c = 0; c < D.cellCount(); ++c) {
    const auto& f = d.filtration(maskOf(D.cell(c)));
    int sh = shiftByColumn ? D.cellDim(c) : 0;
    if (first) lo = f.bottom() - sh, hi = f.top() - sh, first = false;
    lo = std::min(lo, f.bottom() - sh);
    hi = std::max(hi, f.top() - sh);
  }
  std::map<int, std::map<int, Subspace>> lv;
  for (int p = lo; p <= hi; ++p)
    for (int t = tot.lo(); t <= tot.hi(); ++t) {
      Subspace s(tot.ring(), tot.dim(t));
      for (std::size_t c = 0; c < D.cellCount(); ++c) {
        auto off = n.offset(t, c);
        if (!off) continue;
        int m = D.cellDim(c);
        const auto& f = d.filtration(maskOf(D.cell(c)));
        for (const auto& v : f.W(shiftByColumn ? p + m : p, t - m).basis()) {
          Vec e(tot.ring(), tot.dim(t));
          e.place(*off, v);
          s.add(e);
        }
      }
      lv[p].emplace(t, std::move(s));
    }
  return FilteredComplex::fromSubspaces(tot, lv);
}

}  // namespace

FilteredComplex normalizeSigma(const CubicalCodiagram& d, const Normalization& n) { return diagonal(d, n, true); }
FilteredComplex normalizeT(const CubicalCodiagram& d, const Normalization& n) { return diagonal(d, n, false); }

// ---------------------------------------------------------------- posets

PosetDiagram::PosetDiagram(Ring ring, std::vector<std::string> elements, const std::vector<std::pair<int, int>>& covers)
    : ring_(ring), names_(std::move(elements)), covers_(covers) {
  std::size_t n = names_.size();
  leq_.assign(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) leq_[i][i] = true;
  for (auto [x, y] : covers_) {
    if (x < 0 || y < 0 || x >= static_cast<int>(n) || y >= static_cast<int>(n) || x == y)
      throw Error(ErrorKind::ParseError, "bad order relation");
    leq_[x][y] = true;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (leq_[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (leq_[k][j]) leq_[i][j] = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && leq_[i][j] && leq_[j][i]) throw Error(ErrorKind::ParseError, "order relation has a cycle");
  std::vector<bool> done(n, false);
  for (std::size_t step = 0; step < n; ++step)
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      bool minimal = true;
      for (std::size_t j = 0; j < n; ++j)
        if (!done[j] && j != i && leq_[j][i]) minimal = false;
      if (minimal) {
        done[i] = true;
        order_.push_back(static_cast<int>(i));
        break;
      }
    }
  objects_.assign(n, CochainComplex(ring));
  products_.assign(n, {});
}

void PosetDiagram::setObject(int x, CochainComplex c, CupIAlgebra::Evaluator product) {
  if (c.ring() != ring_) throw Error(ErrorKind::RingMismatch, "object over the wrong ring", names_.at(x));
  objects_.at(x) = std::move(c);
  products_.at(x) = std::move(product);
  all_.clear();
}

void PosetDiagram::setArrow(int x, int y, ChainMap f) {
  if (x == y || !leq_.at(x).at(y)) throw Error(ErrorKind::NotFunctorial, "arrow against the order", names_[x] + "->" + names_[y]);
  gen_[{x, y}] = std::move(f);
  all_.clear();
}

void PosetDiagram::closeArrows() const {
  if (!all_.empty()) return;
  std::size_t n = names_.size();
  std::map<std::pair<int, int>, ChainMap> out;
  std::vector<int> pos(n);
  for (std::size_t i = 0; i < n; ++i) pos[order_[i]] = static_cast<int>(i);
  // composites along every path in the cover relations; all paths must agree
  for (int x : order_) {
    for (int y : order_) {
      if (x == y || !leq_[x][y]) continue;
      std::optional<ChainMap> val;
      for (const auto& [zy, g] : gen_) {
        if (zy.second != y || !leq_[x][zy.first]) continue;
        int z = zy.first;
        ChainMap cand = z == x ? g : compose(g, out.at({x, z}));
        if (!val) val = cand;
        else {
          bool same = true;
          for (int k = std::min(val->lo(), cand.lo()); k <= std::max(val->hi(), cand.hi()); ++k)
            if (val->get(k) != cand.get(k) && !(val->get(k).isZero() && cand.get(k).isZero())) same = false;
          if (!same) throw Error(ErrorKind::NotFunctorial, "composites disagree", names_[x] + "->" + names_[y]);
        }
      }
      if (!val) throw Error(ErrorKind::NotFunctorial, "missing arrow", names_[x] + "->" + names_[y]);
      out.emplace(std::make_pair(x, y), *val);
    }
  }
  all_ = std::move(out);
  if (all_.empty()) all_.emplace(std::make_pair(-1, -1), ChainMap());
}

ChainMap PosetDiagram::arrow(int x, int y) const {
  if (x == y) return ChainMap::identity(objects_.at(x));
  closeArrows();
  auto it = all_.find({x, y});
  if (it == all_.end()) throw Error(ErrorKind::NotFunctorial, "no arrow", names_.at(x) + "->" + names_.at(y));
  return it->second;
}

void PosetDiagram::checkFunctorial() const {
  for (const auto& [xy, f] : gen_)
    if (!isChainMap(f, objects_[xy.first], objects_[xy.second]))
      throw Error(ErrorKind::NotFunctorial, "arrow is not a cochain map", names_[xy.first] + "->" + names_[xy.second]);
  all_.clear();
  closeArrows();
}

PosetDiagram PosetDiagram::restrict(const std::vector<int>& keep) const {
  std::vector<std::string> nm;
  for (int x : keep) nm.push_back(names_.at(x));
  std::vector<std::pair<int, int>> cov;
  for (std::size_t i = 0; i < keep.size(); ++i)
    for (std::size_t j = 0; j < keep.size(); ++j) {
      int x = keep[i], y = keep[j];
      if (x == y || !leq_[x][y]) continue;
      bool between = false;
      for (int z : keep)
        if (z != x && z != y && leq_[x][z] && leq_[z][y]) between = true;
      if (!between) cov.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
  PosetDiagram out(ring_, nm, cov);
  for (std::size_t i = 0; i < keep.size(); ++i) out.setObject(static_cast<int>(i), objects_[keep[i]], products_[keep[i]]);
  for (auto [i, j] : cov) out.setArrow(i, j, arrow(keep[i], keep[j]));
  return out;
}

std::shared_ptr<IndexedDiagram> PosetDiagram::indexed() const {
  checkFunctorial();
  std::size_t n = names_.size();
  std::vector<std::string> labels;
  for (int x : order_) labels.push_back(names_[x]);
  // maximal chains, as increasing position sequences in the linear extension
  std::vector<Simplex> chains;
  std::function<void(Simplex&)> grow = [&](Simplex& ch) {
    bool extended = false;
    int last = ch.back();
    for (std::size_t j = last + 1; j < n; ++j) {
      if (!leq_[order_[last]][order_[j]]) continue;
      ch.push_back(static_cast<int>(j));
      grow(ch);
      ch.pop_back();
      extended = true;
    }
    if (!extended) chains.push_back(ch);
  };
  for (std::size_t i = 0; i < n; ++i) {
    Simplex ch{static_cast<int>(i)};
    grow(ch);
  }
  auto index = SimplicialComplex::fromFacets(labels, chains);
  std::vector<std::size_t> objectOf;
  for (int k = 0; k <= index.dimension(); ++k)
    for (const auto& s : index.simplices(k)) objectOf.push_back(static_cast<std::size_t>(order_[s.back()]));
  bool prods = n > 0;
  for (const auto& p : products_)
    if (!p) prods = false;
  return std::make_shared<IndexedDiagram>(
      ring_, index, objectOf, objects_,
      [this](std::size_t i, std::size_t j) { return arrow(static_cast<int>(i), static_cast<int>(j)); },
      prods ? products_ : std::vector<CupIAlgebra::Evaluator>{});
}

Normalization normalizePoset(const PosetDiagram& p) { return Normalization(p.indexed()); }

}  // namespace ctop
