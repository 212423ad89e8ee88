#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ctop/complex.hpp"

namespace ctop {

// sorted vertex indices
using Simplex = std::vector<int>;

class SimplicialComplex {
 public:
  SimplicialComplex() = default;

  // vertexOrder fixes the global order; every listed vertex is a 0-simplex
  static SimplicialComplex fromFacets(const std::vector<std::string>& vertexOrder,
                                      const std::vector<std::vector<std::string>>& facets);
  // vertices 0..n-1, labelled by their index
  static SimplicialComplex fromFacets(int nVertices, const std::vector<Simplex>& facets);
  static SimplicialComplex fromFacets(std::vector<std::string> labels, const std::vector<Simplex>& facets);

  int dimension() const { return static_cast<int>(byDim_.size()) - 1; }
  std::size_t vertexCount() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  int vertexIndex(const std::string& label) const;

  std::size_t count(int k) const;
  const std::vector<Simplex>& simplices(int k) const;
  std::optional<std::size_t> indexOf(const Simplex& s) const;
  bool contains(const Simplex& s) const { return indexOf(s).has_value(); }
  std::vector<std::size_t> fVector() const;
  std::size_t simplexCount() const;
  // maximal simplices in (dimension, lex) order
  std::vector<Simplex> facets() const;
  int euler() const;

  std::string simplexName(const Simplex& s) const;  // labels joined by ','

  bool operator==(const SimplicialComplex& o) const { return labels_ == o.labels_ && byDim_ == o.byDim_; }

 private:
  friend SimplicialComplex subcomplexOf(const SimplicialComplex& k, const std::vector<Simplex>& gens);
  void addClosure(std::vector<std::map<Simplex, std::size_t>>& acc, const Simplex& s);
  void finalize(std::vector<std::map<Simplex, std::size_t>>& acc);

  std::vector<std::string> labels_;
  std::map<std::string, int> labelIndex_;
  std::vector<std::vector<Simplex>> byDim_;
  std::vector<std::map<Simplex, std::size_t>> index_;
};

class SimplicialMap {
 public:
  SimplicialMap() = default;
  // vertexMap[i] = image of source vertex i; throws NotSimplicial
  SimplicialMap(SimplicialComplex source, SimplicialComplex target, std::vector<int> vertexMap);
  static SimplicialMap fromLabels(SimplicialComplex source, SimplicialComplex target,
                                  const std::map<std::string, std::string>& vertexMap);
  static SimplicialMap identity(const SimplicialComplex& k);

  const SimplicialComplex& source() const { return src_; }
  const SimplicialComplex& target() const { return tgt_; }
  const std::vector<int>& vertexMap() const { return map_; }
  int operator()(int v) const { return map_[v]; }

  // image as a sorted simplex, with the permutation sign, or nullopt if degenerate
  std::optional<std::pair<Simplex, int>> image(const Simplex& s) const;

 private:
  SimplicialComplex src_, tgt_;
  std::vector<int> map_;
};

SimplicialMap compose(const SimplicialMap& g, const SimplicialMap& f);

CochainComplex cochains(const SimplicialComplex& k, Ring ring);
// C_*(Delta^n) in degrees -n..0; degree -k has the k-faces
CochainComplex standardChains(int n, Ring ring = Ring::F2);
// cochain pullback f^*: C^*(target) -> C^*(source)
ChainMap pullback(const SimplicialMap& f, Ring ring);

// Alexander-Whitney cup; d(u v) = du v + (-1)^p u dv
Vec cup(const SimplicialComplex& k, int p, const Vec& u, int q, const Vec& v);
// Steenrod cup_i via interval cuts; F2 only for i >= 1
Vec cupI(const SimplicialComplex& k, int p, const Vec& u, int q, const Vec& v, int i);

// Cuts of [0..m] into i+2 intervals: the i+1 cut points, strictly increasing.
// evenPart/oddPart receive the vertex positions covered by even/odd intervals.
void forEachCut(int m, int cutPoints, const std::function<void(const std::vector<int>& evenPart,
                                                              const std::vector<int>& oddPart)>& fn);

struct Subdivision {
  SimplicialComplex sd;
  // sd vertex i is the barycenter of face (dim, index) of the original complex
  std::vector<std::pair<int, std::size_t>> barycenterOf;
};
Subdivision barycentricSubdivision(const SimplicialComplex& k);

SimplicialComplex cone(const SimplicialComplex& k, const std::string& apex = "c");
// join with two points (north, south); the suspension of the empty complex is S^0
SimplicialComplex suspension(const SimplicialComplex& k, const std::string& north = "N", const std::string& south = "S");
SimplicialComplex disjointUnion(const SimplicialComplex& a, const SimplicialComplex& b);
// subcomplex generated by the given simplices (same vertex list)
SimplicialComplex subcomplexOf(const SimplicialComplex& k, const std::vector<Simplex>& gens);

}  // namespace ctop
