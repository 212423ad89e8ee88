#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ctop/complex.hpp"
#include "ctop/steenrod.hpp"

namespace ctop {

// Increasing filtration by subcomplexes. Levels are stored at the points
// where W changes; W_w below the lowest stored level is 0 and the top stored
// level is the whole complex.
class FilteredComplex {
 public:
  FilteredComplex() = default;

  // levels[w][n] spans W_w A^n; throws NotFiltered
  static FilteredComplex make(CochainComplex a, const std::map<int, std::map<int, std::vector<Vec>>>& levels);
  static FilteredComplex fromSubspaces(CochainComplex a, std::map<int, std::map<int, Subspace>> levels);

  const CochainComplex& complex() const { return a_; }
  Ring ring() const { return a_.ring(); }
  int bottom() const { return levels_.begin()->first; }
  int top() const { return levels_.rbegin()->first; }
  std::vector<int> levels() const;

  const Subspace& W(int w, int n) const;
  bool contains(int w, int n, const Vec& x) const { return W(w, n).contains(x); }
  // smallest w with x in W_w (bottom()-1 for x = 0)
  int levelOf(int n, const Vec& x) const;

 private:
  CochainComplex a_;
  std::map<int, std::map<int, Subspace>> levels_;
  std::map<int, Subspace> zero_, whole_;
};

FilteredComplex trivialFiltration(const CochainComplex& a);
FilteredComplex canonicalFiltration(const CochainComplex& a);
FilteredComplex beteFiltration(const CochainComplex& a);
// W'_w = W_{w-k}
FilteredComplex shiftFiltration(const FilteredComplex& f, int k);

// W_w / W_{w-1} with the induced differential
CochainComplex gradedPiece(const FilteredComplex& f, int w);

// f(W_w A) in W_w B for all w; throws NotFiltered naming level and degree
void checkFilteredMap(const ChainMap& f, const FilteredComplex& a, const FilteredComplex& b);
bool isFilteredMap(const ChainMap& f, const FilteredComplex& a, const FilteredComplex& b);

struct FilteredTensor {
  FilteredComplex filtered;
  TensorProduct tensor;
};
FilteredTensor tensorFiltered(const FilteredComplex& a, const FilteredComplex& b);

// Hom^n(A,B) = prod_m Hom(A^m, B^{m+n}), D f = d f - (-1)^n f d.
// A map f_m is stored row-major (rows = basis of B^{m+n}) at offset[n][m].
struct HomComplex {
  CochainComplex complex;
  std::map<int, std::map<int, std::size_t>> offset;
  Vec fromMatrices(int n, const std::map<int, Matrix>& parts, const CochainComplex& a, const CochainComplex& b) const;
  Matrix component(int n, int m, const Vec& f, const CochainComplex& a, const CochainComplex& b) const;
};
HomComplex homComplex(const CochainComplex& a, const CochainComplex& b);

struct FilteredHom {
  FilteredComplex filtered;
  HomComplex hom;
};
FilteredHom homFiltered(const FilteredComplex& a, const FilteredComplex& b);

struct CupShiftReport {
  bool holds = true;
  int p = 0, q = 0, i = 0, degA = 0, degB = 0;
  int required = 0;  // p+q+i
  int actual = 0;    // smallest level containing the offending product
  std::string detail;
};
// W_p A^k cup_i W_q A^l in W_{p+q+i}; exhaustive over stored levels and basis pairs
CupShiftReport filteredCupShift(const CupIAlgebra& alg, const FilteredComplex& w, int maxI = -1);

}  // namespace ctop
