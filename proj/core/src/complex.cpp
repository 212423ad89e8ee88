#include "ctop/complex.hpp"

#include <algorithm>
#include <sstream>

namespace ctop {

CochainComplex CochainComplex::build(Ring ring, int lo, std::vector<std::size_t> dims, std::vector<Matrix> diffs) {
  CochainComplex c(ring);
  c.lo_ = lo;
  if (dims.empty()) {
    if (!diffs.empty()) throw Error(ErrorKind::DimensionMismatch, "differentials given for an empty complex");
    return c;
  }
  if (diffs.size() > dims.size() - 1 + 0) {
    // allow a trailing zero map into the (absent) next degree
    for (std::size_t i = dims.size() - 1; i < diffs.size(); ++i)
      if (!diffs[i].isZero() || diffs[i].cols() != (i < dims.size() ? dims[i] : 0))
        throw Error(ErrorKind::DimensionMismatch, "differential beyond the degree range", std::to_string(lo + int(i)));
    diffs.resize(dims.size() - 1);
  }
  for (std::size_t i = 0; i < diffs.size(); ++i) {
    if (diffs[i].ring() != ring) throw Error(ErrorKind::RingMismatch, "differential over a different ring", std::to_string(lo + int(i)));
    if (diffs[i].rows() != dims[i + 1] || diffs[i].cols() != dims[i])
      throw Error(ErrorKind::DimensionMismatch,
                  "d_" + std::to_string(lo + int(i)) + " is " + std::to_string(diffs[i].rows()) + "x" +
                      std::to_string(diffs[i].cols()) + ", expected " + std::to_string(dims[i + 1]) + "x" +
                      std::to_string(dims[i]),
                  std::to_string(lo + int(i)));
  }
  while (diffs.size() + 1 < dims.size()) diffs.emplace_back(ring, dims[diffs.size() + 1], dims[diffs.size()]);
  for (std::size_t i = 0; i + 1 < diffs.size(); ++i)
    if (!(diffs[i + 1] * diffs[i]).isZero())
      throw Error(ErrorKind::NotAComplex, "d_" + std::to_string(lo + int(i) + 1) + " o d_" + std::to_string(lo + int(i)) + " != 0",
                  std::to_string(lo + int(i)));
  c.dims_ = std::move(dims);
  c.d_ = std::move(diffs);
  return c;
}

CochainComplex CochainComplex::build(Ring ring, const std::map<int, std::size_t>& dims, const std::map<int, Matrix>& diffs) {
  if (dims.empty()) {
    for (const auto& [n, m] : diffs)
      if (m.rows() || m.cols()) throw Error(ErrorKind::DimensionMismatch, "differential without groups", std::to_string(n));
    return CochainComplex(ring);
  }
  int lo = dims.begin()->first, hi = dims.rbegin()->first;
  std::vector<std::size_t> dv;
  for (int n = lo; n <= hi; ++n) {
    auto it = dims.find(n);
    dv.push_back(it == dims.end() ? 0 : it->second);
  }
  std::vector<Matrix> dm;
  for (int n = lo; n < hi; ++n) {
    auto it = diffs.find(n);
    dm.push_back(it == diffs.end() ? Matrix(ring, dv[n + 1 - lo], dv[n - lo]) : it->second);
  }
  for (const auto& [n, m] : diffs)
    if ((n < lo || n >= hi) && !m.isZero())
      throw Error(ErrorKind::DimensionMismatch, "nonzero differential outside the degree range", std::to_string(n));
  return build(ring, lo, std::move(dv), std::move(dm));
}

std::size_t CochainComplex::dim(int n) const {
  if (n < lo_ || n > hi()) return 0;
  return dims_[n - lo_];
}

std::size_t CochainComplex::totalDim() const {
  std::size_t s = 0;
  for (auto d : dims_) s += d;
  return s;
}

Matrix CochainComplex::d(int n) const {
  if (n >= lo_ && n < hi()) return d_[n - lo_];
  return Matrix(ring_, dim(n + 1), dim(n));
}

const Matrix& CochainComplex::dref(int n) const {
  if (n >= lo_ && n < hi()) return d_[n - lo_];
  throw Error(ErrorKind::DegreeOutOfRange, "no stored differential", std::to_string(n));
}

Vec CochainComplex::applyD(int n, const Vec& x) const {
  if (x.size() != dim(n)) throw Error(ErrorKind::DimensionMismatch, "cochain size does not match degree " + std::to_string(n));
  if (n >= lo_ && n < hi()) return d_[n - lo_].apply(x);
  return Vec(ring_, dim(n + 1));
}

void CochainComplex::setLabels(int n, std::vector<std::string> labels) {
  if (labels.size() != dim(n)) throw Error(ErrorKind::DimensionMismatch, "label count", std::to_string(n));
  labels_[n] = std::move(labels);
}

const std::vector<std::string>* CochainComplex::labels(int n) const {
  auto it = labels_.find(n);
  return it == labels_.end() ? nullptr : &it->second;
}

CochainComplex CochainComplex::shift(int k) const {
  CochainComplex c = *this;
  c.lo_ = lo_ - k;
  if (ring_ == Ring::Q && (k % 2 != 0))
    for (auto& m : c.d_)
      for (std::size_t i = 0; i < m.rows(); ++i) m.row(i).scale(Rational(-1));
  c.labels_.clear();
  for (const auto& [n, l] : labels_) c.labels_[n - k] = l;
  return c;
}

// ---------------------------------------------------------------- ChainMap

ChainMap::ChainMap(const CochainComplex& src, const CochainComplex& tgt) : ring_(src.ring()) {
  if (src.empty() && tgt.empty()) return;
  int lo = std::min(src.empty() ? tgt.lo() : src.lo(), tgt.empty() ? src.lo() : tgt.lo());
  int hi = std::max(src.empty() ? tgt.hi() : src.hi(), tgt.empty() ? src.hi() : tgt.hi());
  lo_ = lo;
  for (int n = lo; n <= hi; ++n) m_.emplace_back(ring_, tgt.dim(n), src.dim(n));
}

ChainMap ChainMap::identity(const CochainComplex& a) {
  ChainMap f(a, a);
  for (int n = f.lo(); n <= f.hi(); ++n) f.at(n) = Matrix::identity(a.ring(), a.dim(n));
  return f;
}

ChainMap ChainMap::fromParts(Ring ring, int lo, std::vector<Matrix> parts) {
  ChainMap f;
  f.ring_ = ring;
  f.lo_ = lo;
  f.m_ = std::move(parts);
  return f;
}

Matrix& ChainMap::at(int n) {
  if (!inRange(n)) throw Error(ErrorKind::DegreeOutOfRange, "chain map component", std::to_string(n));
  return m_[n - lo_];
}

const Matrix& ChainMap::at(int n) const {
  if (!inRange(n)) throw Error(ErrorKind::DegreeOutOfRange, "chain map component", std::to_string(n));
  return m_[n - lo_];
}

Matrix ChainMap::get(int n) const {
  if (inRange(n)) return m_[n - lo_];
  return Matrix(ring_, 0, 0);
}

Vec ChainMap::apply(int n, const Vec& x) const {
  if (inRange(n)) return m_[n - lo_].apply(x);
  if (x.size() != 0) throw Error(ErrorKind::DimensionMismatch, "chain map applied outside its range", std::to_string(n));
  return Vec(ring_, 0);
}

bool ChainMap::isZero() const {
  for (const auto& m : m_)
    if (!m.isZero()) return false;
  return true;
}

ChainMap compose(const ChainMap& g, const ChainMap& f) {
  if (f.hi() < f.lo()) return g.hi() < g.lo() ? f : ChainMap::fromParts(g.ring(), g.lo(), {});
  int lo = std::min(f.lo(), g.hi() < g.lo() ? f.lo() : g.lo());
  int hi = std::max(f.hi(), g.hi() < g.lo() ? f.hi() : g.hi());
  std::vector<Matrix> parts;
  for (int n = lo; n <= hi; ++n) {
    std::size_t rows = g.tgtDim(n), cols = f.srcDim(n);
    if (g.srcDim(n) != f.tgtDim(n))
      throw Error(ErrorKind::DimensionMismatch, "composition of chain maps with different middle objects", std::to_string(n));
    if (rows == 0 || cols == 0 || f.tgtDim(n) == 0)
      parts.emplace_back(f.ring(), rows, cols);
    else
      parts.push_back(g.at(n) * f.at(n));
  }
  return ChainMap::fromParts(f.ring(), lo, std::move(parts));
}

ChainMap operator+(const ChainMap& a, const ChainMap& b) {
  if (a.lo() != b.lo() || a.hi() != b.hi()) throw Error(ErrorKind::DimensionMismatch, "sum of chain maps with different ranges");
  std::vector<Matrix> parts;
  for (int n = a.lo(); n <= a.hi(); ++n) {
    Matrix m = a.at(n);
    m += b.at(n);
    parts.push_back(std::move(m));
  }
  return ChainMap::fromParts(a.ring(), a.lo(), std::move(parts));
}

namespace {
int rangeLo(const CochainComplex& a, const CochainComplex& b) {
  if (a.hi() < a.lo()) return b.lo();
  if (b.hi() < b.lo()) return a.lo();
  return std::min(a.lo(), b.lo());
}
int rangeHi(const CochainComplex& a, const CochainComplex& b) {
  if (a.hi() < a.lo()) return b.hi();
  if (b.hi() < b.lo()) return a.hi();
  return std::max(a.hi(), b.hi());
}

// first degree n with f_{n+1} d_n != d_n f_n, or nullopt
std::optional<int> chainMapFailure(const ChainMap& f, const CochainComplex& a, const CochainComplex& b) {
  int lo = rangeLo(a, b), hi = rangeHi(a, b);
  for (int n = lo; n <= hi; ++n) {
    if ((a.dim(n) || b.dim(n)) && (f.srcDim(n) != a.dim(n) || f.tgtDim(n) != b.dim(n)))
      throw Error(ErrorKind::DimensionMismatch,
                  "chain map component in degree " + std::to_string(n) + " is " + std::to_string(f.tgtDim(n)) + "x" +
                      std::to_string(f.srcDim(n)) + ", expected " + std::to_string(b.dim(n)) + "x" + std::to_string(a.dim(n)),
                  std::to_string(n));
  }
  for (int n = lo - 1; n <= hi; ++n) {
    if (a.dim(n) == 0 || b.dim(n + 1) == 0) continue;
    Matrix lhs = (a.dim(n + 1) ? f.at(n + 1) * a.d(n) : Matrix(a.ring(), b.dim(n + 1), a.dim(n)));
    Matrix rhs = (b.dim(n) ? b.d(n) * f.at(n) : Matrix(a.ring(), b.dim(n + 1), a.dim(n)));
    if (lhs != rhs) return n;
  }
  return std::nullopt;
}
}  // namespace

void checkChainMap(const ChainMap& f, const CochainComplex& a, const CochainComplex& b) {
  if (a.ring() != b.ring()) throw Error(ErrorKind::RingMismatch, "chain map between complexes over different rings");
  if (auto n = chainMapFailure(f, a, b))
    throw Error(ErrorKind::NotChainMap, "f d != d f in degree " + std::to_string(*n), std::to_string(*n));
}

bool isChainMap(const ChainMap& f, const CochainComplex& a, const CochainComplex& b) {
  return !chainMapFailure(f, a, b).has_value();
}

// ---------------------------------------------------------------- Cohomology

Cohomology::Cohomology(const CochainComplex& a) : ring_(a.ring()), lo_(a.lo()), hi_(a.hi()) {
  for (int n = lo_; n <= hi_; ++n) {
    Subspace z = Subspace::span(ring_, a.dim(n), kernel(a.d(n)));
    Subspace b(ring_, a.dim(n));
    if (a.dim(n - 1)) b = Subspace::span(ring_, a.dim(n), imageBasis(a.d(n - 1)));
    q_.emplace_back(z, b);
    cdim_.push_back(q_.back().dim());
    cycles_.push_back(std::move(z));
  }
}

std::size_t Cohomology::dim(int n) const {
  if (n < lo_ || n > hi_) return 0;
  return cdim_[n - lo_];
}

std::map<int, std::size_t> Cohomology::dims() const {
  std::map<int, std::size_t> m;
  for (int n = lo_; n <= hi_; ++n) m[n] = cdim_[n - lo_];
  return m;
}

const std::vector<Vec>& Cohomology::reps(int n) const {
  static const std::vector<Vec> none;
  if (n < lo_ || n > hi_) return none;
  return q_[n - lo_].reps();
}

std::optional<Vec> Cohomology::tryClassOf(int n, const Vec& v) const {
  if (n < lo_ || n > hi_) {
    if (v.size() != 0) throw Error(ErrorKind::DimensionMismatch, "cochain outside the degree range", std::to_string(n));
    return Vec(ring_, 0);
  }
  return q_[n - lo_].tryClassOf(v);
}

Vec Cohomology::classOf(int n, const Vec& cocycle) const {
  auto c = tryClassOf(n, cocycle);
  if (!c) throw Error(ErrorKind::ComputeError, "element is not a cocycle", std::to_string(n));
  return *c;
}

bool Cohomology::isCocycle(int n, const Vec& v) const {
  if (n < lo_ || n > hi_) return true;
  return cycles_[n - lo_].contains(v);
}

bool Cohomology::isCoboundary(int n, const Vec& v) const {
  if (n < lo_ || n > hi_) return true;
  return q_[n - lo_].inDenominator(v);
}

std::map<int, Matrix> inducedMap(const ChainMap& f, const Cohomology& ha, const Cohomology& hb) {
  std::map<int, Matrix> out;
  for (int n = ha.lo(); n <= ha.hi(); ++n) {
    Matrix m(ha.ring(), hb.dim(n), ha.dim(n));
    const auto& reps = ha.reps(n);
    for (std::size_t i = 0; i < reps.size(); ++i) {
      Vec c = hb.classOf(n, f.apply(n, reps[i]));
      for (std::size_t r = c.firstNonzero(0); r < c.size(); r = c.firstNonzero(r + 1)) m.set(r, i, c.get(r));
    }
    out.emplace(n, std::move(m));
  }
  return out;
}

std::map<int, Matrix> inducedMap(const ChainMap& f, const CochainComplex& a, const CochainComplex& b) {
  checkChainMap(f, a, b);
  return inducedMap(f, Cohomology(a), Cohomology(b));
}

// ---------------------------------------------------------------- tensor

TensorProduct tensor(const CochainComplex& a, const CochainComplex& b) {
  if (a.ring() != b.ring()) throw Error(ErrorKind::RingMismatch, "tensor of complexes over different rings");
  Ring ring = a.ring();
  TensorProduct t;
  if (a.hi() < a.lo() || b.hi() < b.lo()) {
    t.complex = CochainComplex(ring);
    return t;
  }
  int lo = a.lo() + b.lo(), hi = a.hi() + b.hi();
  t.layout.lo = lo;
  t.layout.hi = hi;
  for (int n = lo; n <= hi; ++n) {
    std::size_t off = 0;
    auto& row = t.layout.offset[n];
    for (int i = a.lo(); i <= a.hi(); ++i) {
      int j = n - i;
      if (j < b.lo() || j > b.hi()) continue;
      row[i] = off;
      off += a.dim(i) * b.dim(j);
    }
    t.layout.dim[n] = off;
  }
  std::vector<std::size_t> dims;
  for (int n = lo; n <= hi; ++n) dims.push_back(t.layout.dim[n]);
  std::vector<Matrix> diffs;
  std::map<int, std::vector<Vec>> acols, bcols;
  for (int i = a.lo(); i <= a.hi(); ++i) acols[i] = a.d(i).columns();
  for (int j = b.lo(); j <= b.hi(); ++j) bcols[j] = b.d(j).columns();
  for (int n = lo; n < hi; ++n) {
    Matrix m(ring, t.layout.dim[n + 1], t.layout.dim[n]);
    for (const auto& [i, off] : t.layout.offset[n]) {
      int j = n - i;
      std::size_t di = a.dim(i), dj = b.dim(j);
      Rational sign = (i % 2 == 0) ? 1 : -1;
      for (std::size_t ka = 0; ka < di; ++ka)
        for (std::size_t kb = 0; kb < dj; ++kb) {
          std::size_t col = off + ka * dj + kb;
          if (i + 1 <= a.hi()) {
            const Vec& c = acols[i][ka];
            for (std::size_t r = c.firstNonzero(0); r < c.size(); r = c.firstNonzero(r + 1))
              m.set(t.index(i + 1, r, j, kb, dj), col, m.get(t.index(i + 1, r, j, kb, dj), col) + c.get(r));
          }
          if (j + 1 <= b.hi()) {
            const Vec& c = bcols[j][kb];
            std::size_t dj1 = b.dim(j + 1);
            for (std::size_t r = c.firstNonzero(0); r < c.size(); r = c.firstNonzero(r + 1))
              m.set(t.index(i, ka, j + 1, r, dj1), col, m.get(t.index(i, ka, j + 1, r, dj1), col) + sign * c.get(r));
          }
        }
    }
    diffs.push_back(std::move(m));
  }
  t.complex = CochainComplex::build(ring, lo, std::move(dims), std::move(diffs));
  return t;
}

Vec tensorElement(const TensorProduct& t, const CochainComplex& a, const CochainComplex& b, int i, const Vec& x, int j,
                  const Vec& y) {
  (void)a;
  Ring ring = t.complex.ring();
  Vec out(ring, t.complex.dim(i + j));
  if (x.isZero() || y.isZero()) return out;
  std::size_t dj = b.dim(j);
  for (std::size_t ka = x.firstNonzero(0); ka < x.size(); ka = x.firstNonzero(ka + 1))
    for (std::size_t kb = y.firstNonzero(0); kb < y.size(); kb = y.firstNonzero(kb + 1)) {
      std::size_t idx = t.index(i, ka, j, kb, dj);
      out.set(idx, out.get(idx) + x.get(ka) * y.get(kb));
    }
  return out;
}

// ---------------------------------------------------------------- subcomplex

Subcomplex subcomplex(const CochainComplex& a, const std::map<int, std::vector<Vec>>& bases) {
  Ring ring = a.ring();
  Subcomplex s;
  int lo = a.lo(), hi = a.hi();
  if (hi < lo) {
    s.complex = CochainComplex(ring);
    s.inclusion = ChainMap(s.complex, a);
    return s;
  }
  std::map<int, std::vector<Vec>> basis;
  for (int n = lo; n <= hi; ++n) {
    Subspace sp(ring, a.dim(n));
    auto it = bases.find(n);
    if (it != bases.end())
      for (const auto& v : it->second) sp.add(v);
    basis[n] = sp.basis();
    s.spaces.emplace(n, std::move(sp));
  }
  std::vector<std::size_t> dims;
  std::vector<Matrix> diffs;
  for (int n = lo; n <= hi; ++n) dims.push_back(basis[n].size());
  for (int n = lo; n < hi; ++n) {
    const auto& tgt = basis[n + 1];
    Echelon e(ring, a.dim(n + 1), std::max<std::size_t>(tgt.size(), 1));
    for (std::size_t k = 0; k < tgt.size(); ++k) e.insert(tgt[k], Vec::unit(ring, tgt.size(), k));
    Matrix m(ring, tgt.size(), basis[n].size());
    for (std::size_t c = 0; c < basis[n].size(); ++c) {
      Vec dv = a.applyD(n, basis[n][c]);
      Vec coords = e.reduce(dv);
      if (!dv.isZero()) throw Error(ErrorKind::NotAComplex, "subspace is not closed under d", std::to_string(n));
      for (std::size_t r = 0; r < tgt.size(); ++r)
        if (coords.nonzero(r)) m.set(r, c, coords.get(r));
    }
    diffs.push_back(std::move(m));
  }
  s.complex = CochainComplex::build(ring, lo, std::move(dims), std::move(diffs));
  std::vector<Matrix> parts;
  for (int n = lo; n <= hi; ++n) parts.push_back(Matrix::fromColumns(ring, a.dim(n), basis[n]));
  s.inclusion = ChainMap::fromParts(ring, lo, std::move(parts));
  return s;
}

CochainComplex directSum(const CochainComplex& a, const CochainComplex& b) {
  if (a.ring() != b.ring()) throw Error(ErrorKind::RingMismatch, "direct sum over different rings");
  Ring ring = a.ring();
  if (a.hi() < a.lo()) return b;
  if (b.hi() < b.lo()) return a;
  int lo = std::min(a.lo(), b.lo()), hi = std::max(a.hi(), b.hi());
  std::vector<std::size_t> dims;
  std::vector<Matrix> diffs;
  for (int n = lo; n <= hi; ++n) dims.push_back(a.dim(n) + b.dim(n));
  for (int n = lo; n < hi; ++n) {
    Matrix m(ring, a.dim(n + 1) + b.dim(n + 1), a.dim(n) + b.dim(n));
    Matrix da = a.d(n), db = b.d(n);
    for (std::size_t i = 0; i < da.rows(); ++i) m.row(i).place(0, da.row(i));
    for (std::size_t i = 0; i < db.rows(); ++i) m.row(a.dim(n + 1) + i).place(a.dim(n), db.row(i));
    diffs.push_back(std::move(m));
  }
  return CochainComplex::build(ring, lo, std::move(dims), std::move(diffs));
}

std::string dimsString(const std::map<int, std::size_t>& d) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [n, k] : d) {
    if (!first) os << ' ';
    first = false;
    os << n << ':' << k;
  }
  return os.str();
}

}  // namespace ctop
