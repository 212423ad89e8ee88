#include <algorithm>
#include <random>

#include "ctop/codiagram.hpp"

namespace ctop {

FilteredComplex columnFiltration(const Normalization& n) {
  const auto& tot = n.total();
  const auto& D = n.diagram();
  std::map<int, std::map<int, Subspace>> lv;
  // W_w = F^{-w}
  for (int w = -n.maxColumn(); w <= 0; ++w)
    for (int t = tot.lo(); t <= tot.hi(); ++t) {
      Subspace s(tot.ring(), tot.dim(t));
      for (std::size_t c = 0; c < D.cellCount(); ++c) {
        if (D.cellDim(c) < -w) continue;
        auto off = n.offset(t, c);
        if (!off) continue;
        for (std::size_t i = 0; i < D.object(c).dim(t - D.cellDim(c)); ++i) s.add(Vec::unit(tot.ring(), tot.dim(t), *off + i));
      }
      lv[w].emplace(t, std::move(s));
    }
  return FilteredComplex::fromSubspaces(tot, lv);
}

bool isColumnFiltration(const Normalization& n, const FilteredComplex& f) {
  if (f.complex().totalDim() != n.total().totalDim()) return false;
  auto col = columnFiltration(n);
  const auto& tot = n.total();
  for (int w = std::min(col.bottom(), f.bottom()) - 1; w <= std::max(col.top(), f.top()); ++w)
    for (int t = tot.lo(); t <= tot.hi(); ++t)
      if (!(col.W(w, t) == f.W(w, t))) return false;
  return true;
}

Vec pageRepresentative(const Normalization& n, const SpectralSequence& ss, int r, int p, int q, std::size_t j) {
  const auto& reps = ss.reps(r, p, q);
  if (j >= reps.size()) throw Error(ErrorKind::RepresentativeMissing, "no such basis class");
  if (r != 1) return reps[j];
  return n.columnPart(p + q, reps[j], p);
}

Vec pageSteenrodOn(const Normalization& n, const SpectralSequence& ss, int s, int r, int p, int q, const Vec& x) {
  int k = p + q;
  int tp = p - q + s, tq = 2 * q;
  Vec out(Ring::F2, ss.dim(r, tp, tq));
  if (s > k || s < 0) return out;
  if (!ss.inZ(r, p, k, x)) throw Error(ErrorKind::RepresentativeMissing, "representative is not in Z_r^p");
  const auto& tot = n.total();
  Vec y = n.cupL(k, x, k, x, k - s);
  if (k + 1 <= tot.hi()) {
    Vec dx = tot.applyD(k, x);
    Vec extra = n.cupL(k + 1, dx, k, x, k - s + 1);
    if (extra.size() == y.size()) y += extra;
  }
  if (tp > ss.pMax()) {
    if (!y.isZero() && !ss.inZ(r, ss.pMax() + 1, k + s, y))
      throw Error(ErrorKind::ComputeError, "P^s left the expected filtration");
    return out;
  }
  return ss.classOf(r, tp, tq, y);
}

std::vector<PageOperation> pageSteenrod(const Normalization& n, const SpectralSequence& ss, int s, int r) {
  if (n.ring() != Ring::F2) throw Error(ErrorKind::UnsupportedRing, "page Steenrod operations need F2");
  if (r != 1 && r != 2) throw Error(ErrorKind::DegreeOutOfRange, "page Steenrod operations are computed on E_1 and E_2");
  if (!isColumnFiltration(n, ss.filtered()))
    throw Error(ErrorKind::NotFiltered, "page operations need the column filtration of a normalization");
  std::vector<PageOperation> out;
  for (int p = ss.pMin(); p <= ss.pMax(); ++p)
    for (int k = ss.lo(); k <= ss.hi(); ++k) {
      int q = k - p;
      std::size_t dim = ss.dim(r, p, q);
      if (dim == 0 || s > k) continue;
      PageOperation op;
      op.s = s, op.r = r, op.p = p, op.q = q;
      op.tp = p - q + s, op.tq = 2 * q;
      std::vector<Vec> cols;
      std::vector<int> reached;
      int l = k - s;
      for (std::size_t j = 0; j < dim; ++j) {
        Vec x = pageRepresentative(n, ss, r, p, q, j);
        cols.push_back(pageSteenrodOn(n, ss, s, r, p, q, x));
        Vec pure = n.columnPart(k, x, p);
        Vec y = n.cupL(k, pure, k, pure, l);
        for (int c = 0; c <= n.maxColumn(); ++c) {
          Vec part = n.columnPart(k + s, y, c);
          if (part.isZero()) continue;
          reached.push_back(c);
          int cuts = 2 * p - c;
          if (cuts < 0 || cuts > std::min(p, l) || n.cupL(k, pure, k, pure, l, cuts) != part) op.outOfRangeZero = false;
        }
      }
      std::sort(reached.begin(), reached.end());
      reached.erase(std::unique(reached.begin(), reached.end()), reached.end());
      op.columns = reached;
      op.matrix = Matrix::fromColumns(Ring::F2, ss.dim(r, op.tp, op.tq), cols);
      out.push_back(std::move(op));
    }
  return out;
}

Vec perturbRepresentative(const SpectralSequence& ss, int r, int p, int q, const Vec& rep, unsigned seed) {
  std::mt19937 g(seed);
  int k = p + q;
  Vec out = rep;
  auto randomIn = [&](const Subspace& sp) {
    Vec v(ss.ring(), sp.ambient());
    for (const auto& b : sp.basis())
      if (g() & 1u) v += b;
    return v;
  };
  out += randomIn(ss.cycles(r - 1, p + 1, k));
  if (k - 1 >= ss.lo()) {
    Vec b = randomIn(ss.cycles(r - 1, p - r + 1, k - 1));
    out += ss.filtered().complex().applyD(k - 1, b);
  }
  return out;
}

}  // namespace ctop
