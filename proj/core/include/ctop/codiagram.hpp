#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ctop/filtration.hpp"
#include "ctop/simplicial.hpp"
#include "ctop/spectral.hpp"
#include "ctop/steenrod.hpp"

namespace ctop {

// A diagram over the face category of a simplicial complex S: one object per
// simplex of S (several simplices may share an object) and a cochain map
// object(tau) -> object(sigma) for every face tau of sigma. The cubical
// codiagrams (S = Delta^n), the cosimplicial replacement of a poset diagram
// (S = order complex, object = last element) and face-poset sheaves (S = K)
// are all instances.
class IndexedDiagram {
 public:
  using ArrowFn = std::function<ChainMap(std::size_t objFrom, std::size_t objTo)>;

  IndexedDiagram() = default;
  // arrow(i, j) is queried only when object i sits on a face of a simplex carrying object j
  IndexedDiagram(Ring ring, SimplicialComplex index, std::vector<std::size_t> objectOf, std::vector<CochainComplex> objects,
                 const ArrowFn& arrow, std::vector<CupIAlgebra::Evaluator> products = {});

  Ring ring() const { return ring_; }
  const SimplicialComplex& index() const { return index_; }
  std::size_t cellCount() const { return cells_.size(); }
  int cellDim(std::size_t c) const { return static_cast<int>(cells_[c].size()) - 1; }
  const Simplex& cell(std::size_t c) const { return cells_[c]; }
  std::size_t cellOf(const Simplex& s) const;
  std::size_t objectOf(std::size_t c) const { return objectOf_[c]; }
  const CochainComplex& object(std::size_t c) const { return objects_[objectOf_[c]]; }
  const std::vector<CochainComplex>& objects() const { return objects_; }
  // object(face) -> object(cell)
  const ChainMap& arrow(std::size_t face, std::size_t cell) const;
  bool hasProducts() const { return !products_.empty(); }
  const CupIAlgebra::Evaluator& product(std::size_t c) const { return products_[objectOf_[c]]; }

 private:
  Ring ring_ = Ring::F2;
  SimplicialComplex index_;
  std::vector<Simplex> cells_;
  std::vector<std::size_t> objectOf_;
  std::vector<CochainComplex> objects_;
  std::map<std::pair<std::size_t, std::size_t>, ChainMap> arrows_;  // by object pair
  std::vector<CupIAlgebra::Evaluator> products_;
  ChainMap idCache_;
  std::vector<ChainMap> identities_;
};

// Total complex: N^t = sum over sigma of object(sigma)^{t - dim sigma},
// (Dx)_sigma = sum_k (-1)^k arrow(x_{d_k sigma}) + (-1)^{dim sigma} d x_sigma.
class Normalization {
 public:
  Normalization() = default;
  explicit Normalization(std::shared_ptr<const IndexedDiagram> d);

  const IndexedDiagram& diagram() const { return *d_; }
  const CochainComplex& total() const { return total_; }
  Ring ring() const { return total_.ring(); }

  // offset of the sigma-component in N^t, if object(sigma) has degree t - dim sigma
  std::optional<std::size_t> offset(int t, std::size_t cell) const;
  Vec component(int t, std::size_t cell, const Vec& x) const;
  void addComponent(int t, std::size_t cell, Vec& x, const Vec& piece) const;
  // keep only the components on simplices of dimension col
  Vec columnPart(int t, const Vec& x, int col) const;
  int maxColumn() const { return d_->index().dimension(); }

  // cup_l via interval cuts of each simplex; F2 only, objects must carry products.
  // cutsFilter >= 0 keeps only the summands with that many cuts (l'' in the text).
  Vec cupL(int a, const Vec& x, int b, const Vec& y, int l, int cutsFilter = -1) const;
  CupIAlgebra algebra() const;

 private:
  std::shared_ptr<const IndexedDiagram> d_;
  CochainComplex total_;
  std::map<int, std::map<std::size_t, std::size_t>> offset_;
};

// ---------------------------------------------------------------- cubical

// Index category: nonempty subsets of {0..n}, encoded as bitmasks.
class CubicalCodiagram {
 public:
  CubicalCodiagram() = default;
  CubicalCodiagram(Ring ring, int n);

  Ring ring() const { return ring_; }
  int arity() const { return n_; }
  static std::vector<unsigned> subsets(int n);  // nonempty, by size then value
  static std::string subsetName(unsigned a);     // "01"
  static unsigned parseSubset(const std::string& s, int n);

  void setObject(unsigned a, CochainComplex c, CupIAlgebra::Evaluator product = {});
  void setFiltration(unsigned a, FilteredComplex w);
  // arrow for a inside b with |b| = |a| + 1
  void setArrow(unsigned a, unsigned b, ChainMap f);

  const CochainComplex& object(unsigned a) const { return objects_.at(a); }
  bool hasProducts() const;
  bool hasFiltrations() const { return filtrations_.size() == objects_.size() && !objects_.empty(); }
  const FilteredComplex& filtration(unsigned a) const { return filtrations_.at(a); }
  // composite along any chain of generators; throws NotFunctorial if paths disagree
  ChainMap arrow(unsigned a, unsigned b) const;
  void checkFunctorial() const;

  std::shared_ptr<IndexedDiagram> indexed() const;

 private:
  Ring ring_ = Ring::F2;
  int n_ = 0;
  std::map<unsigned, CochainComplex> objects_;
  std::map<unsigned, CupIAlgebra::Evaluator> products_;
  std::map<unsigned, FilteredComplex> filtrations_;
  std::map<std::pair<unsigned, unsigned>, ChainMap> gen_;
};

Normalization normalize(const CubicalCodiagram& d);
// diagonal filtration W_p = sum_alpha W_{p+|alpha|-1}(A^alpha)[-(|alpha|-1)]
FilteredComplex normalizeSigma(const CubicalCodiagram& d, const Normalization& n);
// W_p = sum_alpha W_p(A^alpha), shifted
FilteredComplex normalizeT(const CubicalCodiagram& d, const Normalization& n);

// ---------------------------------------------------------------- posets

class PosetDiagram {
 public:
  PosetDiagram() = default;
  // covers: pairs (x, y) with x < y; the order is their transitive closure
  PosetDiagram(Ring ring, std::vector<std::string> elements, const std::vector<std::pair<int, int>>& covers);

  Ring ring() const { return ring_; }
  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  bool leq(int x, int y) const { return leq_[x][y]; }
  // a linear extension (x before y whenever x < y)
  const std::vector<int>& order() const { return order_; }

  void setObject(int x, CochainComplex c, CupIAlgebra::Evaluator product = {});
  void setArrow(int x, int y, ChainMap f);  // for a cover x < y
  const CochainComplex& object(int x) const { return objects_[x]; }
  ChainMap arrow(int x, int y) const;  // composite; identity when x == y
  void checkFunctorial() const;

  // restrict to the elements in `keep` (order and arrows inherited)
  PosetDiagram restrict(const std::vector<int>& keep) const;
  std::shared_ptr<IndexedDiagram> indexed() const;

 private:
  void closeArrows() const;
  Ring ring_ = Ring::F2;
  std::vector<std::string> names_;
  std::vector<std::vector<bool>> leq_;
  std::vector<std::pair<int, int>> covers_;
  std::vector<int> order_;
  std::vector<CochainComplex> objects_;
  std::vector<CupIAlgebra::Evaluator> products_;
  std::map<std::pair<int, int>, ChainMap> gen_;
  mutable std::map<std::pair<int, int>, ChainMap> all_;
};

Normalization normalizePoset(const PosetDiagram& p);

// ---------------------------------------------------------------- page operations

// Steenrod squares on E_1 and E_2 of the column filtration F^p = (simplices of
// dimension >= p) of a normalization. For x in Z_r^p of total degree n = p+q,
// P^s(x) = Dx cup_{n-s+1} x + x cup_{n-s} x lies in Z_r^{p-q+s} and its class
// is Sq^s x in E_r^{p-q+s, 2q}. At the cochain level x cup_{n-s} x of a pure
// column-p element splits by the number l of cuts into columns 2p-l, l <= p.
struct PageOperation {
  int s = 0, r = 0, p = 0, q = 0;
  int tp = 0, tq = 0;  // p - q + s, 2q
  Matrix matrix;       // E_r^{p,q} -> E_r^{tp,tq} on the page bases
  // columns reached by the top-degree cup of the basis classes, and whether
  // each equals its l-cut component for l = 2p - column <= min(p, n - s)
  std::vector<int> columns;
  bool outOfRangeZero = true;
};

// throws NotFiltered unless ss is the column filtration of n; r in {1, 2}
std::vector<PageOperation> pageSteenrod(const Normalization& n, const SpectralSequence& ss, int s, int r);
// class of Sq^s x in E_r^{p-q+s, 2q} for a representative x in Z_r^p
Vec pageSteenrodOn(const Normalization& n, const SpectralSequence& ss, int s, int r, int p, int q, const Vec& x);
// class representative of basis element j of E_r^{p,q}; for r = 1 it is supported in column p
Vec pageRepresentative(const Normalization& n, const SpectralSequence& ss, int r, int p, int q, std::size_t j);
// rep + z + D b with z in Z_{r-1}^{p+1}, b in Z_{r-1}^{p-r+1}: another representative of the same class
Vec perturbRepresentative(const SpectralSequence& ss, int r, int p, int q, const Vec& rep, unsigned seed);
bool isColumnFiltration(const Normalization& n, const FilteredComplex& f);
// F^p = simplices of dimension >= p
FilteredComplex columnFiltration(const Normalization& n);

}  // namespace ctop
