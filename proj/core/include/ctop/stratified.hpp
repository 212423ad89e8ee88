#pragma once

#include <map>
#include <string>
#include <vector>

#include "ctop/perverse.hpp"
#include "ctop/simplicial.hpp"

namespace ctop {

// A pure n-dimensional complex with closed strata X_{n-k} (k = 2..n), each the
// union of the listed pieces of codimension >= k.
class StratifiedComplex {
 public:
  StratifiedComplex() = default;

  int dimension() const { return n_; }
  const SimplicialComplex& complex() const { return k_; }
  // X_{n-k} as a subcomplex; k <= 1 gives the whole complex, k > n the empty one
  const SimplicialComplex& skeleton(int k) const;
  bool inSkeleton(int k, const Simplex& s) const;  // s contained in X_{n-k}
  // dimension of the closed face of s spanned by its vertices in X_{n-k}; -1 if none.
  // Equals dim(|s| cap X_{n-k}) when the strata are full subcomplexes.
  int meetDimension(int k, const Simplex& s) const;
  bool trivial() const;
  // faces not contained in X_{n-k}, as flags over the cells of complex() in (dim, lex) order
  std::vector<bool> openComplement(int k) const;
  bool fullStrata() const;

 private:
  friend StratifiedComplex stratify(const SimplicialComplex& k, const std::map<int, std::vector<Simplex>>& strata);
  int n_ = 0;
  SimplicialComplex k_;
  std::vector<std::vector<bool>> vertexIn_;  // [k][v]
  std::map<int, SimplicialComplex> skel_;    // k -> X_{n-k}
  SimplicialComplex empty_;
};

// strata: codimension -> generating simplices; throws BadStrata
StratifiedComplex stratify(const SimplicialComplex& k, const std::map<int, std::vector<Simplex>>& strata);
// barycentric subdivision, strata subdivided (they become full subcomplexes)
StratifiedComplex subdivide(const StratifiedComplex& x);

// GM intersection homology from allowable simplicial chains on the subdivision;
// the infinite perversity gives the homology of X - X_{n-2}
std::map<int, std::size_t> intersectionHomology(const StratifiedComplex& x, const Perversity& p, Ring ring);

namespace spaces {
StratifiedComplex pinchedTorusStratified();
StratifiedComplex suspendedTorus();  // Sigma T^2 with the two cone points as X_0
StratifiedComplex trivialStratification(const SimplicialComplex& k);
}  // namespace spaces

}  // namespace ctop
