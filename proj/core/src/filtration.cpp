#include "ctop/filtration.hpp"

#include <algorithm>

namespace ctop {

namespace {

std::string lvl(int w, int n) { return "level " + std::to_string(w) + ", degree " + std::to_string(n); }

}  // namespace

FilteredComplex FilteredComplex::fromSubspaces(CochainComplex a, std::map<int, std::map<int, Subspace>> levels) {
  FilteredComplex f;
  f.a_ = std::move(a);
  const auto& c = f.a_;
  Ring r = c.ring();
  for (int n = c.lo(); n <= c.hi(); ++n) {
    f.zero_.emplace(n, Subspace(r, c.dim(n)));
    f.whole_.emplace(n, Subspace::whole(r, c.dim(n)));
  }
  if (levels.empty()) levels[0] = f.whole_;
  for (auto& [w, byDeg] : levels) {
    for (auto it = byDeg.begin(); it != byDeg.end();) {
      if (it->first < c.lo() || it->first > c.hi()) {
        if (it->second.dim() != 0) throw Error(ErrorKind::NotFiltered, "subspace outside the degree range", lvl(w, it->first));
        it = byDeg.erase(it);
      } else {
        if (it->second.ambient() != c.dim(it->first))
          throw Error(ErrorKind::DimensionMismatch, "filtration subspace has the wrong ambient dimension", lvl(w, it->first));
        ++it;
      }
    }
    for (int n = c.lo(); n <= c.hi(); ++n)
      if (!byDeg.count(n)) byDeg.emplace(n, Subspace(r, c.dim(n)));
  }
  // closed under d, increasing, exhaustive
  const std::map<int, Subspace>* prev = nullptr;
  int prevW = 0;
  for (const auto& [w, byDeg] : levels) {
    for (int n = c.lo(); n <= c.hi(); ++n) {
      const Subspace& s = byDeg.at(n);
      if (prev && !s.containsAll(prev->at(n)))
        throw Error(ErrorKind::NotFiltered, "W is not increasing (W_" + std::to_string(prevW) + " not in W_" + std::to_string(w) + ")",
                    lvl(w, n));
      if (n < c.hi()) {
        const Subspace& next = byDeg.at(n + 1);
        for (const auto& b : s.basis())
          if (!next.contains(c.applyD(n, b))) throw Error(ErrorKind::NotFiltered, "W is not closed under d", lvl(w, n));
      }
    }
    prev = &byDeg;
    prevW = w;
  }
  for (int n = c.lo(); n <= c.hi(); ++n)
    if (prev->at(n).dim() != c.dim(n))
      throw Error(ErrorKind::NotFiltered, "top level is not the whole complex", lvl(prevW, n));
  // drop repeated levels
  std::map<int, std::map<int, Subspace>> kept;
  const std::map<int, Subspace>* last = nullptr;
  for (auto& [w, byDeg] : levels) {
    bool same = last != nullptr;
    for (int n = c.lo(); n <= c.hi() && same; ++n) same = last->at(n).dim() == byDeg.at(n).dim();
    if (same) continue;
    kept.emplace(w, std::move(byDeg));
    last = &kept.at(w);
  }
  // keep the top level explicit even if unchanged so that top() is well defined
  if (kept.empty()) kept.emplace(levels.rbegin()->first, f.whole_);
  f.levels_ = std::move(kept);
  return f;
}

FilteredComplex FilteredComplex::make(CochainComplex a, const std::map<int, std::map<int, std::vector<Vec>>>& levels) {
  std::map<int, std::map<int, Subspace>> sub;
  for (const auto& [w, byDeg] : levels)
    for (const auto& [n, gens] : byDeg) {
      for (const auto& g : gens)
        if (g.size() != a.dim(n) || g.ring() != a.ring())
          throw Error(ErrorKind::DimensionMismatch, "filtration generator has the wrong size", lvl(w, n));
      sub[w].emplace(n, Subspace::span(a.ring(), a.dim(n), gens));
    }
  return fromSubspaces(std::move(a), std::move(sub));
}

std::vector<int> FilteredComplex::levels() const {
  std::vector<int> out;
  for (const auto& kv : levels_) out.push_back(kv.first);
  return out;
}

const Subspace& FilteredComplex::W(int w, int n) const {
  auto z = zero_.find(n);
  if (z == zero_.end()) {
    static const Subspace empty;
    return empty;
  }
  auto it = levels_.upper_bound(w);
  if (it == levels_.begin()) return z->second;
  --it;
  return it->second.at(n);
}

int FilteredComplex::levelOf(int n, const Vec& x) const {
  if (x.isZero()) return bottom() - 1;
  for (const auto& [w, byDeg] : levels_)
    if (byDeg.at(n).contains(x)) return w;
  throw Error(ErrorKind::DimensionMismatch, "vector not in the complex", std::to_string(n));
}

FilteredComplex trivialFiltration(const CochainComplex& a) {
  std::map<int, std::map<int, Subspace>> lv;
  for (int n = a.lo(); n <= a.hi(); ++n) lv[0].emplace(n, Subspace::whole(a.ring(), a.dim(n)));
  return FilteredComplex::fromSubspaces(a, lv);
}

FilteredComplex canonicalFiltration(const CochainComplex& a) {
  std::map<int, std::map<int, Subspace>> lv;
  Ring r = a.ring();
  for (int p = a.lo(); p <= a.hi(); ++p)
    for (int n = a.lo(); n <= a.hi(); ++n) {
      if (n < p) lv[p].emplace(n, Subspace::whole(r, a.dim(n)));
      else if (n == p) lv[p].emplace(n, Subspace::span(r, a.dim(n), kernel(a.d(n))));
      else lv[p].emplace(n, Subspace(r, a.dim(n)));
    }
  return FilteredComplex::fromSubspaces(a, lv);
}

FilteredComplex beteFiltration(const CochainComplex& a) {
  std::map<int, std::map<int, Subspace>> lv;
  Ring r = a.ring();
  for (int p = -a.hi(); p <= -a.lo(); ++p)
    for (int n = a.lo(); n <= a.hi(); ++n)
      lv[p].emplace(n, n >= -p ? Subspace::whole(r, a.dim(n)) : Subspace(r, a.dim(n)));
  return FilteredComplex::fromSubspaces(a, lv);
}

FilteredComplex shiftFiltration(const FilteredComplex& f, int k) {
  std::map<int, std::map<int, Subspace>> lv;
  const auto& a = f.complex();
  for (int w : f.levels())
    for (int n = a.lo(); n <= a.hi(); ++n) lv[w + k].emplace(n, f.W(w, n));
  return FilteredComplex::fromSubspaces(a, lv);
}

CochainComplex gradedPiece(const FilteredComplex& f, int w) {
  const auto& a = f.complex();
  Ring r = a.ring();
  std::vector<Quotient> qs;
  std::vector<std::size_t> dims;
  for (int n = a.lo(); n <= a.hi(); ++n) {
    qs.emplace_back(f.W(w, n), f.W(w - 1, n));
    dims.push_back(qs.back().dim());
  }
  std::vector<Matrix> diffs;
  for (int n = a.lo(); n < a.hi(); ++n) {
    const Quotient& src = qs[n - a.lo()];
    const Quotient& tgt = qs[n + 1 - a.lo()];
    std::vector<Vec> cols;
    for (const auto& x : src.reps()) cols.push_back(tgt.classOf(a.applyD(n, x)));
    diffs.push_back(Matrix::fromColumns(r, tgt.dim(), cols));
  }
  if (dims.empty()) return CochainComplex(r);
  return CochainComplex::build(r, a.lo(), dims, diffs);
}

void checkFilteredMap(const ChainMap& f, const FilteredComplex& a, const FilteredComplex& b) {
  std::vector<int> ws = a.levels();
  for (int w : b.levels()) ws.push_back(w);
  std::sort(ws.begin(), ws.end());
  ws.erase(std::unique(ws.begin(), ws.end()), ws.end());
  const auto& ca = a.complex();
  for (int w : ws)
    for (int n = ca.lo(); n <= ca.hi(); ++n)
      for (const auto& x : a.W(w, n).basis())
        if (!b.W(w, n).contains(f.apply(n, x))) throw Error(ErrorKind::NotFiltered, "map does not respect the filtration", lvl(w, n));
}

bool isFilteredMap(const ChainMap& f, const FilteredComplex& a, const FilteredComplex& b) {
  try {
    checkFilteredMap(f, a, b);
    return true;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotFiltered) throw;
    return false;
  }
}

FilteredTensor tensorFiltered(const FilteredComplex& a, const FilteredComplex& b) {
  if (a.ring() != b.ring()) throw Error(ErrorKind::RingMismatch, "tensor of filtered complexes over different rings");
  FilteredTensor out;
  out.tensor = tensor(a.complex(), b.complex());
  const auto& ca = a.complex();
  const auto& cb = b.complex();
  const auto& t = out.tensor.complex;
  std::map<int, std::map<int, Subspace>> lv;
  for (int p = a.bottom() + b.bottom(); p <= a.top() + b.top(); ++p) {
    std::map<int, Subspace> byDeg;
    for (int n = t.lo(); n <= t.hi(); ++n) byDeg.emplace(n, Subspace(t.ring(), t.dim(n)));
    for (int i : a.levels()) {
      int j = p - i;
      for (int da = ca.lo(); da <= ca.hi(); ++da)
        for (int db = cb.lo(); db <= cb.hi(); ++db) {
          const auto& wa = a.W(i, da).basis();
          const auto& wb = b.W(j, db).basis();
          for (const auto& x : wa)
            for (const auto& y : wb) byDeg.at(da + db).add(tensorElement(out.tensor, ca, cb, da, x, db, y));
        }
    }
    lv.emplace(p, std::move(byDeg));
  }
  out.filtered = FilteredComplex::fromSubspaces(t, std::move(lv));
  return out;
}

HomComplex homComplex(const CochainComplex& a, const CochainComplex& b) {
  if (a.ring() != b.ring()) throw Error(ErrorKind::RingMismatch, "hom between complexes over different rings");
  Ring r = a.ring();
  HomComplex h;
  int lo = b.lo() - a.hi(), hi = b.hi() - a.lo();
  if (a.totalDim() == 0 || b.totalDim() == 0) {
    h.complex = CochainComplex(r);
    return h;
  }
  std::vector<std::size_t> dims;
  for (int n = lo; n <= hi; ++n) {
    std::size_t off = 0;
    for (int m = a.lo(); m <= a.hi(); ++m) {
      h.offset[n][m] = off;
      off += a.dim(m) * b.dim(m + n);
    }
    dims.push_back(off);
  }
  std::vector<Matrix> diffs;
  for (int n = lo; n < hi; ++n) {
    Matrix d(r, dims[n + 1 - lo], dims[n - lo]);
    Rational sign = (n % 2 == 0) ? Rational(-1) : Rational(1);  // -(-1)^n
    for (int m = a.lo(); m <= a.hi(); ++m) {
      std::size_t ra = b.dim(m + n), ca = a.dim(m);
      Matrix db = b.d(m + n);  // B^{m+n} -> B^{m+n+1}
      Matrix dam = a.d(m - 1);  // A^{m-1} -> A^m
      for (std::size_t rr = 0; rr < ra; ++rr)
        for (std::size_t cc = 0; cc < ca; ++cc) {
          std::size_t col = h.offset[n][m] + rr * ca + cc;
          // d_B E_{rr,cc}: component m of degree n+1
          if (m + n + 1 <= b.hi()) {
            std::size_t off = h.offset[n + 1][m];
            for (std::size_t r2 = 0; r2 < db.rows(); ++r2) {
              Rational v = db.get(r2, rr);
              if (v != 0) d.set(off + r2 * ca + cc, col, d.get(off + r2 * ca + cc, col) + v);
            }
          }
          // E_{rr,cc} d_A^{m-1}: component m-1 of degree n+1
          if (m - 1 >= a.lo()) {
            std::size_t cprev = a.dim(m - 1);
            std::size_t off = h.offset[n + 1][m - 1];
            for (std::size_t c2 = 0; c2 < cprev; ++c2) {
              Rational v = dam.get(cc, c2);
              if (v != 0) d.set(off + rr * cprev + c2, col, d.get(off + rr * cprev + c2, col) + sign * v);
            }
          }
        }
    }
    diffs.push_back(std::move(d));
  }
  h.complex = CochainComplex::build(r, lo, dims, diffs);
  return h;
}

Vec HomComplex::fromMatrices(int n, const std::map<int, Matrix>& parts, const CochainComplex& a,
                             const CochainComplex& b) const {
  Vec v(complex.ring(), complex.dim(n));
  for (const auto& [m, mat] : parts) {
    if (m < a.lo() || m > a.hi()) continue;
    if (mat.rows() != b.dim(m + n) || mat.cols() != a.dim(m))
      throw Error(ErrorKind::DimensionMismatch, "hom component has the wrong shape", std::to_string(m));
    std::size_t off = offset.at(n).at(m);
    for (std::size_t i = 0; i < mat.rows(); ++i)
      for (std::size_t j = 0; j < mat.cols(); ++j) {
        Rational x = mat.get(i, j);
        if (x != 0) v.set(off + i * mat.cols() + j, x);
      }
  }
  return v;
}

Matrix HomComplex::component(int n, int m, const Vec& f, const CochainComplex& a, const CochainComplex& b) const {
  Matrix out(complex.ring(), b.dim(m + n), a.dim(m));
  if (!offset.count(n) || !offset.at(n).count(m)) return out;
  std::size_t off = offset.at(n).at(m);
  for (std::size_t i = 0; i < out.rows(); ++i)
    for (std::size_t j = 0; j < out.cols(); ++j) out.set(i, j, f.get(off + i * out.cols() + j));
  return out;
}

FilteredHom homFiltered(const FilteredComplex& a, const FilteredComplex& b) {
  FilteredHom out;
  const auto& ca = a.complex();
  const auto& cb = b.complex();
  out.hom = homComplex(ca, cb);
  const auto& h = out.hom.complex;
  Ring r = h.ring();
  std::map<int, std::map<int, Subspace>> lv;
  if (h.totalDim() == 0) {
    out.filtered = trivialFiltration(h);
    return out;
  }
  for (int p = b.bottom() - a.top(); p <= b.top() - a.bottom(); ++p) {
    for (int n = h.lo(); n <= h.hi(); ++n) {
      // constraints: for every level q and x in W_q A^m, f_m x in W'_{q+p} B^{m+n}
      std::vector<Vec> rows;  // constraint functionals, built as a matrix with columns = hom basis
      std::size_t N = h.dim(n);
      std::vector<Vec> images(N);
      std::size_t total = 0;
      struct Block {
        int m;
        const Subspace* target;
        Vec x;
        std::size_t off;
      };
      std::vector<Block> blocks;
      for (int m = ca.lo(); m <= ca.hi(); ++m) {
        if (m + n < cb.lo() || m + n > cb.hi()) continue;
        for (int q : a.levels())
          for (const auto& x : a.W(q, m).basis()) {
            blocks.push_back({m, &b.W(q + p, m + n), x, total});
            total += cb.dim(m + n);
          }
      }
      Matrix cons(r, total, N);
      for (const auto& blk : blocks) {
        std::size_t rows_ = cb.dim(blk.m + n), cols_ = ca.dim(blk.m);
        std::size_t off = out.hom.offset.at(n).at(blk.m);
        for (std::size_t rr = 0; rr < rows_; ++rr)
          for (std::size_t cc = 0; cc < cols_; ++cc) {
            Rational xc = blk.x.get(cc);
            if (xc == 0) continue;
            Vec img(r, rows_);
            img.set(rr, xc);
            Vec red = blk.target->reduce(img);
            for (std::size_t k = 0; k < rows_; ++k)
              if (red.nonzero(k)) cons.set(blk.off + k, off + rr * cols_ + cc, cons.get(blk.off + k, off + rr * cols_ + cc) + red.get(k));
          }
      }
      lv[p].emplace(n, Subspace::span(r, N, kernel(cons)));
    }
  }
  out.filtered = FilteredComplex::fromSubspaces(h, std::move(lv));
  return out;
}

CupShiftReport filteredCupShift(const CupIAlgebra& alg, const FilteredComplex& w, int maxI) {
  CupShiftReport rep;
  const auto& c = alg.complex();
  int lo = c.lo(), hi = c.hi();
  for (int p : w.levels())
    for (int q : w.levels())
      for (int k = lo; k <= hi; ++k)
        for (int l = lo; l <= hi; ++l) {
          const auto& bp = w.W(p, k).basis();
          const auto& bq = w.W(q, l).basis();
          if (bp.empty() || bq.empty()) continue;
          for (int i = 0; k + l - i >= lo; ++i) {
            if (maxI >= 0 && i > maxI) break;
            int deg = k + l - i;
            if (deg > hi) continue;
            for (const auto& x : bp)
              for (const auto& y : bq) {
                Vec prod = alg.cupI(i, k, x, l, y);
                if (w.contains(p + q + i, deg, prod)) continue;
                rep.holds = false;
                rep.p = p;
                rep.q = q;
                rep.i = i;
                rep.degA = k;
                rep.degB = l;
                rep.required = p + q + i;
                rep.actual = w.levelOf(deg, prod);
                rep.detail = "W_" + std::to_string(p) + " A^" + std::to_string(k) + " cup_" + std::to_string(i) + " W_" +
                             std::to_string(q) + " A^" + std::to_string(l) + " reaches level " + std::to_string(rep.actual) +
                             " > " + std::to_string(rep.required);
                return rep;
              }
          }
        }
  return rep;
}

}  // namespace ctop
