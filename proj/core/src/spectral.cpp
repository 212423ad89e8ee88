#include "ctop/spectral.hpp"

#include "ctop/parallel.hpp"

namespace ctop {

namespace {

std::string at(int r, int p, int q) {
  return "r=" + std::to_string(r) + " (p,q)=(" + std::to_string(p) + "," + std::to_string(q) + ")";
}

}  // namespace

SpectralSequence::SpectralSequence(FilteredComplex fc) : fc_(std::move(fc)) {
  const auto& a = fc_.complex();
  Ring ring = a.ring();
  pmin_ = -fc_.top();
  pmax_ = -fc_.bottom();
  last_ = pmax_ - pmin_ + 1;
  int lo = a.lo(), hi = a.hi();
  std::vector<std::pair<int, int>> keys;
  for (int p = pmin_; p <= pmax_; ++p)
    for (int n = lo; n <= hi; ++n) keys.emplace_back(p, n);

  auto Z = [&](int r, int p, int n) {
    if (r <= 0) return F(p, n);
    Subspace tgt = n + 1 <= hi ? F(p + r, n + 1) : Subspace(ring, 0);
    return preimage(a.d(n), F(p, n), tgt);
  };
  auto B = [&](int r, int p, int n) {
    if (n - 1 < lo) return Subspace(ring, a.dim(n));
    Subspace img = imageOf(a.d(n - 1), F(p - r + 1, n - 1));
    return F(p, n).intersect(img);
  };

  pages_.resize(last_ + 1);
  for (int r = 0; r <= last_; ++r) {
    std::vector<Cell> cells(keys.size());
    parallelFor(keys.size(), [&](std::size_t k) {
      auto [p, n] = keys[k];
      Cell c;
      c.z = Z(r, p, n);
      Subspace den = Z(r - 1, p + 1, n) + B(r, p, n);
      c.e = Quotient(c.z, den);
      cells[k] = std::move(c);
    });
    for (std::size_t k = 0; k < keys.size(); ++k) pages_[r].emplace(keys[k], std::move(cells[k]));
    // differentials need the target cells of the same page
    std::vector<Matrix> ds(keys.size());
    parallelFor(keys.size(), [&](std::size_t k) {
      auto [p, n] = keys[k];
      const Cell& src = pages_[r].at(keys[k]);
      const Cell* tgt = cell(r, p + r, n + 1);
      std::size_t rows = tgt ? tgt->e.dim() : 0;
      std::vector<Vec> cols;
      for (const auto& x : src.e.reps()) cols.push_back(tgt ? tgt->e.classOf(a.applyD(n, x)) : Vec(ring, 0));
      ds[k] = Matrix::fromColumns(ring, rows, cols);
    });
    for (std::size_t k = 0; k < keys.size(); ++k) pages_[r].at(keys[k]).d = std::move(ds[k]);
  }
  stable_ = last_;
  for (int r = last_; r >= 1; --r) {
    bool zero = true;
    for (const auto& kv : pages_[r - 1])
      if (!kv.second.d.isZero()) zero = false;
    if (!zero || r - 1 < 1) break;
    stable_ = r - 1;
  }
}

const SpectralSequence::Cell* SpectralSequence::cell(int r, int p, int n) const {
  if (pages_.empty()) return nullptr;
  if (r > last_) r = last_;
  if (r < 0) throw Error(ErrorKind::DegreeOutOfRange, "negative page index");
  auto it = pages_[r].find({p, n});
  return it == pages_[r].end() ? nullptr : &it->second;
}

std::size_t SpectralSequence::dim(int r, int p, int q) const {
  const Cell* c = cell(r, p, p + q);
  return c ? c->e.dim() : 0;
}

const std::vector<Vec>& SpectralSequence::reps(int r, int p, int q) const {
  static const std::vector<Vec> none;
  const Cell* c = cell(r, p, p + q);
  return c ? c->e.reps() : none;
}

std::optional<Vec> SpectralSequence::tryClassOf(int r, int p, int q, const Vec& x) const {
  const Cell* c = cell(r, p, p + q);
  if (!c) {
    // below the range every page vanishes; above it only 0 lies in F^p
    if (p < pmin_ || x.isZero()) return Vec(ring(), 0);
    return std::nullopt;
  }
  if (!c->z.contains(x)) return std::nullopt;
  return c->e.classOf(x);
}

Vec SpectralSequence::classOf(int r, int p, int q, const Vec& x) const {
  auto v = tryClassOf(r, p, q, x);
  if (!v) throw Error(ErrorKind::RepresentativeMissing, "element is not in Z_r^p", at(r, p, q));
  return *v;
}

bool SpectralSequence::inZ(int r, int p, int n, const Vec& x) const {
  const Cell* c = cell(r, p, n);
  return c ? c->z.contains(x) : x.isZero();
}

Subspace SpectralSequence::cycles(int r, int p, int n) const {
  const auto& a = fc_.complex();
  if (n < a.lo() || n > a.hi()) return Subspace(ring(), 0);
  if (const Cell* c = r <= last_ ? cell(std::max(r, 0), p, n) : cell(last_, p, n); c && r >= 0) return c->z;
  if (r <= 0) return F(p, n);
  Subspace tgt = n + 1 <= a.hi() ? F(p + r, n + 1) : Subspace(ring(), 0);
  return preimage(a.d(n), F(p, n), tgt);
}

Matrix SpectralSequence::d(int r, int p, int q) const {
  const Cell* c = cell(r, p, p + q);
  if (!c) return Matrix(ring(), dim(r, p + r, q - r + 1), 0);
  if (r > last_) return Matrix(ring(), c->d.rows(), c->d.cols());
  return c->d;
}

std::vector<std::pair<int, int>> SpectralSequence::support() const {
  std::vector<std::pair<int, int>> out;
  for (int p = pmin_; p <= pmax_; ++p)
    for (int n = lo(); n <= hi(); ++n)
      for (int r = 0; r <= last_; ++r)
        if (dim(r, p, n - p) != 0) {
          out.emplace_back(p, n - p);
          break;
        }
  return out;
}

SSCheckReport verifySpectralSequence(const SpectralSequence& ss) {
  SSCheckReport rep;
  const auto& fc = ss.filtered();
  const auto& a = fc.complex();
  auto fail = [&](bool& flag, const std::string& msg) {
    if (flag && rep.detail.empty()) rep.detail = msg;
    flag = false;
  };
  for (int p = ss.pMin(); p <= ss.pMax(); ++p) {
    Cohomology gr(gradedPiece(fc, -p));
    for (int n = ss.lo(); n <= ss.hi(); ++n)
      if (gr.dim(n) != ss.dim(1, p, n - p)) fail(rep.e1MatchesGr, "E1 differs from H(Gr) at " + at(1, p, n - p));
  }
  for (int r = 0; r < ss.lastPage(); ++r)
    for (int p = ss.pMin(); p <= ss.pMax(); ++p)
      for (int n = ss.lo(); n <= ss.hi(); ++n) {
        int q = n - p;
        std::size_t out = rank(ss.d(r, p, q));
        std::size_t in = rank(ss.d(r, p - r, q + r - 1));
        if (ss.dim(r, p, q) - out - in != ss.dim(r + 1, p, q))
          fail(rep.pageTurn, "page-turn identity fails at " + at(r, p, q));
      }
  Cohomology h(a);
  for (int n = ss.lo(); n <= ss.hi(); ++n) {
    std::size_t sum = 0;
    for (int p = ss.pMin(); p <= ss.pMax(); ++p) sum += ss.dimInfinity(p, n - p);
    if (sum != h.dim(n)) fail(rep.convergence, "sum of E_inf differs from dim H^" + std::to_string(n));
    // induced filtration F^p H^n = image of F^p cap ker d
    Subspace ker = Subspace::span(a.ring(), a.dim(n), kernel(a.d(n)));
    Subspace im = n - 1 >= a.lo() ? imageOf(a.d(n - 1), Subspace::whole(a.ring(), a.dim(n - 1))) : Subspace(a.ring(), a.dim(n));
    auto fh = [&](int p) { return (fc.W(-p, n).intersect(ker) + im).dim() - im.dim(); };
    for (int p = ss.pMin(); p <= ss.pMax(); ++p)
      if (fh(p) - fh(p + 1) != ss.dimInfinity(p, n - p))
        fail(rep.abutmentGraded, "E_inf differs from Gr H at (p,n)=(" + std::to_string(p) + "," + std::to_string(n) + ")");
  }
  return rep;
}

std::map<std::pair<int, int>, Matrix> pageMap(const ChainMap& f, const SpectralSequence& a, const SpectralSequence& b,
                                              int r) {
  std::map<std::pair<int, int>, Matrix> out;
  int pmin = std::min(a.pMin(), b.pMin()), pmax = std::max(a.pMax(), b.pMax());
  int lo = std::min(a.lo(), b.lo()), hi = std::max(a.hi(), b.hi());
  for (int p = pmin; p <= pmax; ++p)
    for (int n = lo; n <= hi; ++n) {
      int q = n - p;
      std::vector<Vec> cols;
      for (const auto& x : a.reps(r, p, q)) cols.push_back(b.classOf(r, p, q, f.apply(n, x)));
      out.emplace(std::make_pair(p, q), Matrix::fromColumns(a.ring(), b.dim(r, p, q), cols));
    }
  return out;
}

bool checkErQuasiIso(const ChainMap& f, const FilteredComplex& a, const FilteredComplex& b, int r) {
  checkFilteredMap(f, a, b);
  SpectralSequence sa(a), sb(b);
  for (const auto& [pq, m] : pageMap(f, sa, sb, r + 1))
    if (m.rows() != m.cols() || rank(m) != m.cols()) return false;
  return true;
}

}  // namespace ctop
