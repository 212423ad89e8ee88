#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ctop/complex.hpp"

namespace ctop {

// GM perversity (p(2), ..., p(n)) with p(2) = 0 and p(k) <= p(k+1) <= p(k) + 1,
// or the top element infinity.
class Perversity {
 public:
  Perversity() = default;
  // throws InvalidPerversity naming the first bad k
  static Perversity make(int n, std::vector<int> values);
  static Perversity zero(int n);
  static Perversity top(int n);  // t(k) = k - 2
  static Perversity infinity(int n);

  int n() const { return n_; }
  bool isInfinite() const { return inf_; }
  int operator()(int k) const;  // p(k) for 2 <= k <= n; throws on infinity
  const std::vector<int>& values() const { return v_; }

  bool leq(const Perversity& o) const;  // pointwise, infinity on top
  bool operator==(const Perversity& o) const { return n_ == o.n_ && inf_ == o.inf_ && v_ == o.v_; }
  bool operator<(const Perversity& o) const;  // total order for containers (enumeration order)
  std::string str() const;                    // "(0,1,2)" or "inf"

 private:
  int n_ = 2;
  bool inf_ = false;
  std::vector<int> v_;  // v_[k-2]
};

// all perversities for dimension n, finite ones in lexicographic order then infinity;
// memoized and safe under concurrent first use
const std::vector<Perversity>& enumeratePerversities(int n);

// smallest valid perversity r with r(k) >= h(k) for k = 2..n, or infinity
Perversity smallestDominating(int n, const std::vector<int>& h);
Perversity oplus(const Perversity& p, const Perversity& q);
// the same value by search over the enumeration
Perversity oplusBruteForce(const Perversity& p, const Perversity& q);
// L(p, s)(k) = min(2 p(k), p(k) + s), clipped to the smallest dominating perversity or infinity
Perversity lPerversity(const Perversity& p, int s);
// a 2p(k) <= k - 2 test
bool goreskyDoubleFinite(const Perversity& p);

// tau_{<= k}: A^m for m < k, ker d in degree k, 0 above
Subcomplex truncate(const CochainComplex& a, int k);
// f restricted to subcomplexes (f(sa) must lie in sb); throws NotChainMap otherwise
ChainMap restrictMap(const ChainMap& f, const Subcomplex& sa, const Subcomplex& sb);

// A functor from the perversities of dimension n to complexes
class PerverseComplex {
 public:
  using LevelFn = std::function<CochainComplex(const Perversity&)>;
  using TransitionFn = std::function<ChainMap(const Perversity&, const Perversity&)>;

  PerverseComplex() = default;
  // transition(p, q) is queried for every p < q
  PerverseComplex(int n, Ring ring, const LevelFn& level, const TransitionFn& transition);

  int n() const { return n_; }
  Ring ring() const { return ring_; }
  const CochainComplex& at(const Perversity& p) const;
  ChainMap transition(const Perversity& p, const Perversity& q) const;  // identity for p == q
  // throws NotFunctorial at the first bad triple
  void checkFunctorial() const;

 private:
  std::size_t index(const Perversity& p) const;
  int n_ = 2;
  Ring ring_ = Ring::F2;
  std::vector<CochainComplex> levels_;
  std::map<std::pair<std::size_t, std::size_t>, ChainMap> trans_;
};

PerverseComplex truncatePerverse(const PerverseComplex& a, int k);
// level p = span of the images of A_q (x) B_q' with q + q' <= p, inside A_inf (x) B_inf
PerverseComplex perverseTensor(const PerverseComplex& a, const PerverseComplex& b);
// R in degree 0 at every level >= p, zero below
PerverseComplex tPerverse(const Perversity& p, Ring ring);
PerverseComplex constantPerverse(int n, const CochainComplex& a);

}  // namespace ctop
