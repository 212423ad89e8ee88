#pragma once
// Independent test-side computations. Nothing here calls into ctop linear algebra.

#include <algorithm>
#include <boost/multiprecision/gmp.hpp>
#include <map>
#include <set>
#include <vector>

namespace oracle {

using Q = boost::multiprecision::mpq_rational;
using Bits = std::vector<std::vector<int>>;

inline int rankF2(Bits m) {
  int r = 0;
  if (m.empty()) return 0;
  int cols = static_cast<int>(m[0].size());
  for (int c = 0; c < cols && r < static_cast<int>(m.size()); ++c) {
    int piv = -1;
    for (int i = r; i < static_cast<int>(m.size()); ++i)
      if (m[i][c] & 1) { piv = i; break; }
    if (piv < 0) continue;
    std::swap(m[piv], m[r]);
    for (int i = 0; i < static_cast<int>(m.size()); ++i)
      if (i != r && (m[i][c] & 1))
        for (int j = 0; j < cols; ++j) m[i][j] ^= m[r][j] & 1;
    ++r;
  }
  return r;
}

inline int rankQ(std::vector<std::vector<Q>> m) {
  int r = 0;
  if (m.empty()) return 0;
  int cols = static_cast<int>(m[0].size());
  for (int c = 0; c < cols && r < static_cast<int>(m.size()); ++c) {
    int piv = -1;
    for (int i = r; i < static_cast<int>(m.size()); ++i)
      if (m[i][c] != 0) { piv = i; break; }
    if (piv < 0) continue;
    std::swap(m[piv], m[r]);
    for (int i = 0; i < static_cast<int>(m.size()); ++i)
      if (i != r && m[i][c] != 0) {
        Q f = m[i][c] / m[r][c];
        for (int j = 0; j < cols; ++j) m[i][j] -= f * m[r][j];
      }
    ++r;
  }
  return r;
}

// Betti numbers of the simplicial complex generated by facets (vertex ints), F2 or Q.
inline std::vector<int> betti(const std::vector<std::vector<int>>& facets, bool overQ) {
  std::vector<std::set<std::vector<int>>> by;
  for (auto f : facets) {
    std::sort(f.begin(), f.end());
    int n = static_cast<int>(f.size());
    for (int mask = 1; mask < (1 << n); ++mask) {
      std::vector<int> s;
      for (int i = 0; i < n; ++i)
        if (mask >> i & 1) s.push_back(f[i]);
      if (by.size() < s.size()) by.resize(s.size());
      by[s.size() - 1].insert(s);
    }
  }
  int top = static_cast<int>(by.size()) - 1;
  std::vector<std::vector<std::vector<int>>> list(by.size());
  for (std::size_t k = 0; k < by.size(); ++k) list[k].assign(by[k].begin(), by[k].end());
  // boundary rank from k-simplices to (k-1)-simplices
  std::vector<int> rk(by.size() + 1, 0);
  for (int k = 1; k <= top; ++k) {
    std::map<std::vector<int>, int> idx;
    for (std::size_t i = 0; i < list[k - 1].size(); ++i) idx[list[k - 1][i]] = static_cast<int>(i);
    if (overQ) {
      std::vector<std::vector<Q>> m(list[k - 1].size(), std::vector<Q>(list[k].size()));
      for (std::size_t j = 0; j < list[k].size(); ++j)
        for (int f = 0; f <= k; ++f) {
          auto s = list[k][j];
          s.erase(s.begin() + f);
          m[idx[s]][j] = (f % 2 ? -1 : 1);
        }
      rk[k] = rankQ(m);
    } else {
      Bits m(list[k - 1].size(), std::vector<int>(list[k].size()));
      for (std::size_t j = 0; j < list[k].size(); ++j)
        for (int f = 0; f <= k; ++f) {
          auto s = list[k][j];
          s.erase(s.begin() + f);
          m[idx[s]][j] = 1;
        }
      rk[k] = rankF2(m);
    }
  }
  std::vector<int> b(by.size());
  for (int k = 0; k <= top; ++k) b[k] = static_cast<int>(list[k].size()) - rk[k] - rk[k + 1];
  return b;
}

// Perversities of dimension n as plain sequences (p(2), ..., p(n)).
inline std::vector<std::vector<int>> perversities(int n) {
  std::vector<std::vector<int>> out{{0}};
  for (int k = 3; k <= n; ++k) {
    std::vector<std::vector<int>> next;
    for (const auto& p : out)
      for (int step = 0; step <= 1; ++step) {
        auto q = p;
        q.push_back(p.back() + step);
        next.push_back(q);
      }
    out = next;
  }
  std::sort(out.begin(), out.end());
  return out;
}

// smallest perversity r with r >= h pointwise; empty when none exists (the infinite one)
inline std::vector<int> smallestAbove(const std::vector<int>& h) {
  int n = static_cast<int>(h.size()) + 1;
  std::vector<int> best;
  for (const auto& r : perversities(n)) {
    bool dom = true;
    for (std::size_t i = 0; i < r.size(); ++i) dom = dom && r[i] >= h[i];
    if (!dom) continue;
    if (best.empty()) best = r;
    else
      for (std::size_t i = 0; i < r.size(); ++i) best[i] = std::min(best[i], r[i]);
  }
  return best;
}

inline std::vector<int> perversitySum(const std::vector<int>& p, const std::vector<int>& q) {
  std::vector<int> h(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) h[i] = p[i] + q[i];
  return smallestAbove(h);
}

// Goresky's range: 2 p(k) <= k - 2 for k = 2..n
inline bool doubleFits(const std::vector<int>& p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (2 * p[i] > static_cast<int>(i)) return false;
  return true;
}

}  // namespace oracle
