#pragma once

#include <map>
#include <string>
#include <vector>

#include "ctop/linalg.hpp"

namespace ctop {

// Finite cochain complex: groups in degrees [lo, hi], d_n : A^n -> A^{n+1}
// stored as a dim(n+1) x dim(n) matrix.
class CochainComplex {
 public:
  CochainComplex() = default;
  explicit CochainComplex(Ring ring) : ring_(ring) {}

  // diffs[i] is d_{lo+i}; missing trailing differentials are zero.
  static CochainComplex build(Ring ring, int lo, std::vector<std::size_t> dims, std::vector<Matrix> diffs);
  static CochainComplex build(Ring ring, const std::map<int, std::size_t>& dims, const std::map<int, Matrix>& diffs);

  Ring ring() const { return ring_; }
  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(dims_.size()) - 1; }
  bool empty() const { return totalDim() == 0; }
  std::size_t dim(int n) const;
  std::size_t totalDim() const;

  // zero-sized matrices are synthesized outside the stored range
  Matrix d(int n) const;
  const Matrix& dref(int n) const;  // only for lo <= n < hi
  Vec applyD(int n, const Vec& x) const;

  void setLabels(int n, std::vector<std::string> labels);
  const std::vector<std::string>* labels(int n) const;

  // A[k]: (A[k])^n = A^{n+k}, d unchanged (sign (-1)^k applied over Q)
  CochainComplex shift(int k) const;

 private:
  Ring ring_ = Ring::F2;
  int lo_ = 0;
  std::vector<std::size_t> dims_;
  std::vector<Matrix> d_;  // d_[i] = d_{lo+i}, size dims_.size()-1 (at least 0)
  std::map<int, std::vector<std::string>> labels_;
};

class ChainMap {
 public:
  ChainMap() = default;
  ChainMap(const CochainComplex& src, const CochainComplex& tgt);  // zero map

  static ChainMap identity(const CochainComplex& a);
  static ChainMap fromParts(Ring ring, int lo, std::vector<Matrix> parts);

  Ring ring() const { return ring_; }
  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(m_.size()) - 1; }
  std::size_t srcDim(int n) const { return inRange(n) ? m_[n - lo_].cols() : 0; }
  std::size_t tgtDim(int n) const { return inRange(n) ? m_[n - lo_].rows() : 0; }

  Matrix& at(int n);
  const Matrix& at(int n) const;
  Matrix get(int n) const;  // zero-sized outside range
  Vec apply(int n, const Vec& x) const;
  bool isZero() const;
  bool operator==(const ChainMap& o) const { return lo_ == o.lo_ && m_ == o.m_; }

 private:
  bool inRange(int n) const { return n >= lo_ && n <= hi(); }
  Ring ring_ = Ring::F2;
  int lo_ = 0;
  std::vector<Matrix> m_;
};

// g after f
ChainMap compose(const ChainMap& g, const ChainMap& f);
ChainMap operator+(const ChainMap& a, const ChainMap& b);
// throws NotChainMap naming the first failing degree
void checkChainMap(const ChainMap& f, const CochainComplex& a, const CochainComplex& b);
bool isChainMap(const ChainMap& f, const CochainComplex& a, const CochainComplex& b);

struct Cochain {
  int degree = 0;
  Vec v;
};

class Cohomology {
 public:
  Cohomology() = default;
  explicit Cohomology(const CochainComplex& a);

  Ring ring() const { return ring_; }
  int lo() const { return lo_; }
  int hi() const { return hi_; }
  std::size_t dim(int n) const;
  std::map<int, std::size_t> dims() const;
  const std::vector<Vec>& reps(int n) const;
  // coordinates of the class of a cocycle; throws ComputeError if not a cocycle
  Vec classOf(int n, const Vec& cocycle) const;
  std::optional<Vec> tryClassOf(int n, const Vec& v) const;
  bool isCocycle(int n, const Vec& v) const;
  bool isCoboundary(int n, const Vec& v) const;

 private:
  Ring ring_ = Ring::F2;
  int lo_ = 0, hi_ = -1;
  std::vector<std::size_t> cdim_;
  std::vector<Subspace> cycles_;
  std::vector<Quotient> q_;
};

// induced maps on the chosen cohomology bases (column i = image of rep i)
std::map<int, Matrix> inducedMap(const ChainMap& f, const CochainComplex& a, const CochainComplex& b);
std::map<int, Matrix> inducedMap(const ChainMap& f, const Cohomology& ha, const Cohomology& hb);

// Index layout for tensor products: degree n part ordered by i ascending,
// then (basis of A^i) x (basis of B^{n-i}) row-major.
struct TensorLayout {
  int lo = 0, hi = -1;
  // offsets[n][i] for pieces A^i (x) B^{n-i}
  std::map<int, std::map<int, std::size_t>> offset;
  std::map<int, std::size_t> dim;
};

struct TensorProduct {
  CochainComplex complex;
  TensorLayout layout;
  // index of a (x) b with a basis index ka in degree i, b basis index kb in degree j
  std::size_t index(int i, std::size_t ka, int j, std::size_t kb, std::size_t dimBj) const {
    return layout.offset.at(i + j).at(i) + ka * dimBj + kb;
  }
};

TensorProduct tensor(const CochainComplex& a, const CochainComplex& b);
// x (x) y as an element of (A (x) B)^{|x|+|y|}
Vec tensorElement(const TensorProduct& t, const CochainComplex& a, const CochainComplex& b, int i, const Vec& x, int j,
                  const Vec& y);

struct Subcomplex {
  CochainComplex complex;
  ChainMap inclusion;  // sub -> ambient
  std::map<int, Subspace> spaces;
};

// bases[n] spans a d-closed subspace of A^n; throws NotAComplex if not closed
Subcomplex subcomplex(const CochainComplex& a, const std::map<int, std::vector<Vec>>& bases);

CochainComplex directSum(const CochainComplex& a, const CochainComplex& b);

// H^n dims map as "n:d" string, for diagnostics
std::string dimsString(const std::map<int, std::size_t>& d);

}  // namespace ctop
