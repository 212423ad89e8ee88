#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ctop/filtration.hpp"

namespace ctop {

// Spectral sequence of an increasing filtration W, with F^p = W_{-p}:
// E_1^{p,q} = H^{p+q}(Gr_{-p}), d_r : E_r^{p,q} -> E_r^{p+r,q-r+1}.
// E_r^{p,n} = Z_r^p / (Z_{r-1}^{p+1} + B_r^p) with
// Z_r^p = {x in F^p : dx in F^{p+r}}, B_r^p = F^p cap d(F^{p-r+1}).
class SpectralSequence {
 public:
  SpectralSequence() = default;
  explicit SpectralSequence(FilteredComplex fc);

  const FilteredComplex& filtered() const { return fc_; }
  Ring ring() const { return fc_.ring(); }
  int pMin() const { return pmin_; }
  int pMax() const { return pmax_; }
  int lo() const { return fc_.complex().lo(); }
  int hi() const { return fc_.complex().hi(); }
  // pages 0..lastPage() are stored; E_r = E_lastPage for larger r
  int lastPage() const { return last_; }
  // smallest r with d_r' = 0 for all r' >= r
  int stableAt() const { return stable_; }

  std::size_t dim(int r, int p, int q) const;
  std::size_t dimInfinity(int p, int q) const { return dim(last_, p, q); }
  // representatives in Z_r^p, as cochains of degree p+q
  const std::vector<Vec>& reps(int r, int p, int q) const;
  Vec classOf(int r, int p, int q, const Vec& x) const;  // throws if x not in Z_r^p
  std::optional<Vec> tryClassOf(int r, int p, int q, const Vec& x) const;
  bool inZ(int r, int p, int n, const Vec& x) const;
  // Z_r^p in total degree n (F^p for r <= 0)
  Subspace cycles(int r, int p, int n) const;
  // d_r out of (p,q), as a dim(r,p+r,q-r+1) x dim(r,p,q) matrix
  Matrix d(int r, int p, int q) const;

  // every (p,q) with a nonzero entry on some page
  std::vector<std::pair<int, int>> support() const;

 private:
  struct Cell {
    Subspace z;
    Quotient e;
    Matrix d;
  };
  const Cell* cell(int r, int p, int n) const;
  const Subspace& F(int p, int n) const { return fc_.W(-p, n); }

  FilteredComplex fc_;
  int pmin_ = 0, pmax_ = -1, last_ = 0, stable_ = 0;
  std::vector<std::map<std::pair<int, int>, Cell>> pages_;  // [r][(p,n)]
};

struct SSCheckReport {
  bool e1MatchesGr = true;
  bool pageTurn = true;
  bool convergence = true;
  bool abutmentGraded = true;  // E_inf = Gr of the induced filtration on H
  std::string detail;
  bool ok() const { return e1MatchesGr && pageTurn && convergence && abutmentGraded; }
};
SSCheckReport verifySpectralSequence(const SpectralSequence& ss);

// E_r(f) at every (p,q), as matrices on the page bases
std::map<std::pair<int, int>, Matrix> pageMap(const ChainMap& f, const SpectralSequence& a, const SpectralSequence& b,
                                              int r);
// true iff E_{r+1}(f) is an isomorphism in every bidegree; throws NotFiltered
bool checkErQuasiIso(const ChainMap& f, const FilteredComplex& a, const FilteredComplex& b, int r);

}  // namespace ctop
