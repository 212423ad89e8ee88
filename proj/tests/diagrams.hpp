#pragma once
// Filtered direct sums and block maps for building small test diagrams.

#include <map>
#include <vector>

#include "ctop/filtration.hpp"

namespace diag {

using namespace ctop;

inline FilteredComplex filteredSum(const FilteredComplex& a, const FilteredComplex& b) {
  auto c = directSum(a.complex(), b.complex());
  Ring r = c.ring();
  std::map<int, std::map<int, Subspace>> lv;
  int lo = std::min(a.bottom(), b.bottom()), hi = std::max(a.top(), b.top());
  for (int w = lo; w <= hi; ++w)
    for (int n = c.lo(); n <= c.hi(); ++n) {
      Subspace s(r, c.dim(n));
      std::size_t da = a.complex().dim(n);
      for (const auto& v : a.W(w, n).basis()) {
        Vec e(r, c.dim(n));
        e.place(0, v);
        s.add(e);
      }
      for (const auto& v : b.W(w, n).basis()) {
        Vec e(r, c.dim(n));
        e.place(da, v);
        s.add(e);
      }
      lv[w].emplace(n, std::move(s));
    }
  return FilteredComplex::fromSubspaces(c, lv);
}

// block map between sums: sends summand `from` of src to summand `to` of tgt
inline ChainMap blockMap(const std::vector<const CochainComplex*>& src, std::size_t from,
                  const std::vector<const CochainComplex*>& tgt, std::size_t to, const CochainComplex& s,
                  const CochainComplex& t) {
  Ring r = s.ring();
  int lo = std::min(s.lo(), t.lo()), hi = std::max(s.hi(), t.hi());
  std::vector<Matrix> parts;
  for (int n = lo; n <= hi; ++n) {
    Matrix m(r, t.dim(n), s.dim(n));
    std::size_t so = 0, to0 = 0;
    for (std::size_t i = 0; i < from; ++i) so += src[i]->dim(n);
    for (std::size_t i = 0; i < to; ++i) to0 += tgt[i]->dim(n);
    for (std::size_t i = 0; i < src[from]->dim(n); ++i) m.set(to0 + i, so + i, 1L);
    parts.push_back(std::move(m));
  }
  return ChainMap::fromParts(r, lo, parts);
}

}  // namespace diag
