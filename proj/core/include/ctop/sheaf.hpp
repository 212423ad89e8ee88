#pragma once

#include <memory>
#include <vector>

#include "ctop/codiagram.hpp"
#include "ctop/simplicial.hpp"

namespace ctop {

// A complex of sheaves on the face poset of K (open sets are upward closed):
// a stalk at every face of the domain and a restriction stalk(f) -> stalk(c)
// for every face f of c, both in the domain. Cells are numbered in (dim, lex) order.
class PosetSheaf {
 public:
  PosetSheaf() = default;
  // empty domain means all of K
  PosetSheaf(SimplicialComplex k, Ring ring, std::vector<bool> domain = {});

  const SimplicialComplex& complex() const { return k_; }
  Ring ring() const { return ring_; }
  std::size_t cellCount() const { return cells_.size(); }
  const Simplex& cell(std::size_t c) const { return cells_[c]; }
  int cellDim(std::size_t c) const { return static_cast<int>(cells_[c].size()) - 1; }
  std::size_t cellOf(const Simplex& s) const;
  std::string cellName(std::size_t c) const { return k_.simplexName(cells_[c]); }
  const std::vector<bool>& domain() const { return domain_; }
  bool inDomain(std::size_t c) const { return domain_[c]; }
  bool wholeSpace() const;
  bool isFace(std::size_t f, std::size_t c) const;
  // faces of c (c included) in cell order
  const std::vector<std::size_t>& facesOf(std::size_t c) const { return faces_[c]; }
  const std::vector<std::size_t>& cofacesOf(std::size_t c) const { return cofaces_[c]; }

  void setStalk(std::size_t c, CochainComplex a, CupIAlgebra::Evaluator product = {});
  void setRestriction(std::size_t f, std::size_t c, ChainMap m);
  const CochainComplex& stalk(std::size_t c) const { return stalks_[c]; }
  const ChainMap& restriction(std::size_t f, std::size_t c) const;
  bool hasProducts() const;
  const CupIAlgebra::Evaluator& product(std::size_t c) const { return products_[c]; }

  // chain maps and strict composition; throws NotFunctorial naming the faces
  void checkFunctorial() const;
  PosetSheaf restrictTo(const std::vector<bool>& open) const;

 private:
  SimplicialComplex k_;
  Ring ring_ = Ring::F2;
  std::vector<Simplex> cells_;
  std::vector<bool> domain_;
  std::vector<std::vector<std::size_t>> faces_, cofaces_;
  std::vector<CochainComplex> stalks_;
  std::vector<CupIAlgebra::Evaluator> products_;
  std::map<std::pair<std::size_t, std::size_t>, ChainMap> res_;
  std::vector<ChainMap> id_;
};

std::vector<bool> allCells(const SimplicialComplex& k);
bool isOpen(const SimplicialComplex& k, const std::vector<bool>& set);
// open star of a cell
std::vector<bool> starOf(const SimplicialComplex& k, std::size_t cell);

// R in degree 0 with identity restrictions and the product of the ground ring
PosetSheaf constantSheaf(const SimplicialComplex& k, Ring ring, std::vector<bool> domain = {});
PosetSheaf skyscraper(const SimplicialComplex& k, std::size_t cell, const CochainComplex& a);

// holim of F over U cap st(cell): the normalization of the order complex of
// those faces, with object(chain) = stalk(last face)
struct LocalHolim {
  std::shared_ptr<Normalization> n;
  std::vector<std::size_t> vertexCell;  // index vertex -> cell of K
};
LocalHolim localHolim(const PosetSheaf& f, std::size_t cell, const std::vector<bool>& open);

// R Gamma(domain; F) as the normalization over the order complex of the domain
Normalization sectionsByChains(const PosetSheaf& f);
// face-cellular model over K: sum of stalk(sigma)^{t - dim sigma}; needs the whole space
Normalization sectionsCellular(const PosetSheaf& f);
std::map<int, std::size_t> hypercohomology(const PosetSheaf& f);

struct Pushforward {
  PosetSheaf sheaf;
  std::vector<LocalHolim> holim;  // per cell of the target domain
};
// R i_* F along the inclusion of the domain of F into the open set `target`;
// restrictions are the projections onto subchains. Throws NotOpen.
Pushforward pushforwardOpen(const PosetSheaf& f, std::vector<bool> target = {});

// stalk(cell) -> holim over open cap st(cell), x |-> (restrictions of x on the vertices)
ChainMap unitMap(const PosetSheaf& f, std::size_t cell, const LocalHolim& h);

}  // namespace ctop
