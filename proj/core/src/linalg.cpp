#include "ctop/linalg.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace ctop {

const char* errorKindName(ErrorKind k) {
  switch (k) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotAComplex: return "NotAComplex";
    case ErrorKind::NotChainMap: return "NotChainMap";
    case ErrorKind::UnknownVertex: return "UnknownVertex";
    case ErrorKind::NotSimplicial: return "NotSimplicial";
    case ErrorKind::MixedComplexes: return "MixedComplexes";
    case ErrorKind::UnsupportedRing: return "UnsupportedRing";
    case ErrorKind::DegreeOutOfRange: return "DegreeOutOfRange";
    case ErrorKind::NotFiltered: return "NotFiltered";
    case ErrorKind::RingMismatch: return "RingMismatch";
    case ErrorKind::NotFunctorial: return "NotFunctorial";
    case ErrorKind::NotNice: return "NotNice";
    case ErrorKind::RepresentativeMissing: return "RepresentativeMissing";
    case ErrorKind::InvalidPerversity: return "InvalidPerversity";
    case ErrorKind::BadStrata: return "BadStrata";
    case ErrorKind::NotOpen: return "NotOpen";
    case ErrorKind::MissingDualComplex: return "MissingDualComplex";
    case ErrorKind::IncompatibleDiagrams: return "IncompatibleDiagrams";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::ComputeError: return "ComputeError";
  }
  return "Error";
}

const char* ringName(Ring r) { return r == Ring::F2 ? "F2" : "Q"; }

Ring parseRing(const std::string& s) {
  if (s == "F2" || s == "f2") return Ring::F2;
  if (s == "Q" || s == "q") return Ring::Q;
  throw Error(ErrorKind::SchemaError, "unknown ring '" + s + "' (expected F2 or Q)");
}

// ---------------------------------------------------------------- Vec

Vec::Vec(Ring ring, std::size_t n) : ring_(ring), n_(n) {
  if (ring == Ring::F2)
    bits_.assign((n + 63) / 64, 0);
  else
    q_.assign(n, Rational(0));
}

Vec Vec::unit(Ring ring, std::size_t n, std::size_t i) {
  Vec v(ring, n);
  v.set(i, 1L);
  return v;
}

bool Vec::isZero() const {
  if (ring_ == Ring::F2) {
    for (auto w : bits_)
      if (w) return false;
    return true;
  }
  for (const auto& x : q_)
    if (x != 0) return false;
  return true;
}

Rational Vec::get(std::size_t i) const {
  if (ring_ == Ring::F2) return Rational((bits_[i >> 6] >> (i & 63)) & 1u);
  return q_[i];
}

bool Vec::nonzero(std::size_t i) const {
  if (ring_ == Ring::F2) return (bits_[i >> 6] >> (i & 63)) & 1u;
  return q_[i] != 0;
}

void Vec::set(std::size_t i, const Rational& x) {
  if (ring_ == Ring::F2) {
    // reduce a rational with odd denominator mod 2
    auto num = boost::multiprecision::numerator(x);
    auto den = boost::multiprecision::denominator(x);
    if (den % 2 == 0) throw Error(ErrorKind::UnsupportedRing, "value has even denominator over F2");
    bool odd = (num % 2) != 0;
    std::uint64_t m = std::uint64_t(1) << (i & 63);
    if (odd)
      bits_[i >> 6] |= m;
    else
      bits_[i >> 6] &= ~m;
    return;
  }
  q_[i] = x;
}

std::size_t Vec::firstNonzero(std::size_t from) const {
  if (from >= n_) return n_;
  if (ring_ == Ring::F2) {
    std::size_t w = from >> 6;
    std::uint64_t cur = bits_[w] & (~std::uint64_t(0) << (from & 63));
    while (true) {
      if (cur) return std::min(n_, (w << 6) + std::countr_zero(cur));
      if (++w >= bits_.size()) return n_;
      cur = bits_[w];
    }
  }
  for (std::size_t i = from; i < n_; ++i)
    if (q_[i] != 0) return i;
  return n_;
}

std::size_t Vec::count() const {
  std::size_t c = 0;
  if (ring_ == Ring::F2) {
    for (auto w : bits_) c += std::popcount(w);
    return c;
  }
  for (const auto& x : q_) c += (x != 0);
  return c;
}

void Vec::checkCompat(const Vec& o) const {
  if (o.ring_ != ring_) throw Error(ErrorKind::RingMismatch, "vectors over different rings");
  if (o.n_ != n_) throw Error(ErrorKind::DimensionMismatch, "vector sizes " + std::to_string(n_) + " vs " + std::to_string(o.n_));
}

Vec& Vec::operator+=(const Vec& o) {
  checkCompat(o);
  if (ring_ == Ring::F2) {
    for (std::size_t w = 0; w < bits_.size(); ++w) bits_[w] ^= o.bits_[w];
  } else {
    for (std::size_t i = 0; i < n_; ++i)
      if (o.q_[i] != 0) q_[i] += o.q_[i];
  }
  return *this;
}

Vec& Vec::operator-=(const Vec& o) {
  checkCompat(o);
  if (ring_ == Ring::F2) return *this += o;
  for (std::size_t i = 0; i < n_; ++i)
    if (o.q_[i] != 0) q_[i] -= o.q_[i];
  return *this;
}

void Vec::addScaled(const Vec& o, const Rational& c) {
  checkCompat(o);
  if (c == 0) return;
  if (ring_ == Ring::F2) {
    if (boost::multiprecision::numerator(c) % 2 != 0) *this += o;
    return;
  }
  for (std::size_t i = 0; i < n_; ++i)
    if (o.q_[i] != 0) q_[i] += c * o.q_[i];
}

void Vec::scale(const Rational& c) {
  if (ring_ == Ring::F2) {
    if (boost::multiprecision::numerator(c) % 2 == 0) std::fill(bits_.begin(), bits_.end(), 0);
    return;
  }
  for (auto& x : q_) x *= c;
}

Rational Vec::dot(const Vec& o) const {
  checkCompat(o);
  if (ring_ == Ring::F2) {
    unsigned p = 0;
    for (std::size_t w = 0; w < bits_.size(); ++w) p += std::popcount(bits_[w] & o.bits_[w]);
    return Rational(p & 1u);
  }
  Rational s = 0;
  for (std::size_t i = 0; i < n_; ++i)
    if (q_[i] != 0 && o.q_[i] != 0) s += q_[i] * o.q_[i];
  return s;
}

Vec Vec::slice(std::size_t off, std::size_t len) const {
  Vec r(ring_, len);
  if (ring_ == Ring::F2) {
    for (std::size_t i = firstNonzero(off); i < off + len && i < n_; i = firstNonzero(i + 1))
      r.bits_[(i - off) >> 6] |= std::uint64_t(1) << ((i - off) & 63);
  } else {
    for (std::size_t i = 0; i < len; ++i) r.q_[i] = q_[off + i];
  }
  return r;
}

void Vec::place(std::size_t off, const Vec& piece) {
  if (piece.ring_ != ring_ || off + piece.n_ > n_)
    throw Error(ErrorKind::DimensionMismatch, "place out of range");
  if (ring_ == Ring::F2) {
    for (std::size_t i = 0; i < piece.n_; ++i) {
      std::size_t j = off + i;
      std::uint64_t m = std::uint64_t(1) << (j & 63);
      if (piece.nonzero(i))
        bits_[j >> 6] |= m;
      else
        bits_[j >> 6] &= ~m;
    }
  } else {
    for (std::size_t i = 0; i < piece.n_; ++i) q_[off + i] = piece.q_[i];
  }
}

void Vec::addInto(std::size_t off, const Vec& piece) {
  if (piece.ring_ != ring_ || off + piece.n_ > n_)
    throw Error(ErrorKind::DimensionMismatch, "addInto out of range");
  if (ring_ == Ring::F2) {
    for (std::size_t i = piece.firstNonzero(0); i < piece.n_; i = piece.firstNonzero(i + 1)) {
      std::size_t j = off + i;
      bits_[j >> 6] ^= std::uint64_t(1) << (j & 63);
    }
  } else {
    for (std::size_t i = 0; i < piece.n_; ++i)
      if (piece.q_[i] != 0) q_[off + i] += piece.q_[i];
  }
}

bool Vec::operator==(const Vec& o) const {
  if (ring_ != o.ring_ || n_ != o.n_) return false;
  return ring_ == Ring::F2 ? bits_ == o.bits_ : q_ == o.q_;
}

bool Vec::operator<(const Vec& o) const {
  if (n_ != o.n_) return n_ < o.n_;
  for (std::size_t i = 0; i < n_; ++i) {
    Rational a = get(i), b = o.get(i);
    if (a != b) return a < b;
  }
  return false;
}

std::string Vec::str() const {
  std::string s;
  if (ring_ == Ring::F2) {
    s.reserve(n_);
    for (std::size_t i = 0; i < n_; ++i) s.push_back(nonzero(i) ? '1' : '0');
    return s;
  }
  std::ostringstream os;
  for (std::size_t i = 0; i < n_; ++i) {
    if (i) os << ',';
    os << q_[i];
  }
  return os.str();
}

Vec operator+(Vec a, const Vec& b) { return a += b; }
Vec operator-(Vec a, const Vec& b) { return a -= b; }

// ---------------------------------------------------------------- Matrix

Matrix::Matrix(Ring ring, std::size_t rows, std::size_t cols)
    : ring_(ring), rows_(rows), cols_(cols), r_(rows, Vec(ring, cols)) {}

Matrix Matrix::identity(Ring ring, std::size_t n) {
  Matrix m(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1L);
  return m;
}

Matrix Matrix::fromColumns(Ring ring, std::size_t rows, const std::vector<Vec>& cols) {
  Matrix m(ring, rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows) throw Error(ErrorKind::DimensionMismatch, "column length");
    for (std::size_t i = cols[j].firstNonzero(0); i < rows; i = cols[j].firstNonzero(i + 1))
      m.set(i, j, cols[j].get(i));
  }
  return m;
}

Matrix Matrix::fromRows(Ring ring, std::size_t cols, std::vector<Vec> rows) {
  Matrix m;
  m.ring_ = ring;
  m.rows_ = rows.size();
  m.cols_ = cols;
  for (auto& r : rows)
    if (r.size() != cols || r.ring() != ring) throw Error(ErrorKind::DimensionMismatch, "row length");
  m.r_ = std::move(rows);
  return m;
}

Vec Matrix::column(std::size_t j) const {
  Vec c(ring_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    if (r_[i].nonzero(j)) c.set(i, r_[i].get(j));
  return c;
}

std::vector<Vec> Matrix::columns() const {
  Matrix t = transpose();
  std::vector<Vec> out;
  out.reserve(cols_);
  for (std::size_t j = 0; j < cols_; ++j) out.push_back(t.r_[j]);
  return out;
}

Vec Matrix::apply(const Vec& x) const {
  if (x.size() != cols_) throw Error(ErrorKind::DimensionMismatch, "matrix-vector: " + std::to_string(cols_) + " cols vs vector " + std::to_string(x.size()));
  Vec y(ring_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    Rational d = r_[i].dot(x);
    if (d != 0) y.set(i, d);
  }
  return y;
}

Matrix Matrix::operator*(const Matrix& b) const {
  if (cols_ != b.rows_) throw Error(ErrorKind::DimensionMismatch, "matrix product: " + std::to_string(cols_) + " vs " + std::to_string(b.rows_));
  Matrix c(ring_, rows_, b.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    const Vec& ri = r_[i];
    for (std::size_t k = ri.firstNonzero(0); k < cols_; k = ri.firstNonzero(k + 1))
      c.r_[i].addScaled(b.r_[k], ri.get(k));
  }
  return c;
}

Matrix& Matrix::operator+=(const Matrix& b) {
  if (rows_ != b.rows_ || cols_ != b.cols_) throw Error(ErrorKind::DimensionMismatch, "matrix sum");
  for (std::size_t i = 0; i < rows_; ++i) r_[i] += b.r_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& b) {
  if (rows_ != b.rows_ || cols_ != b.cols_) throw Error(ErrorKind::DimensionMismatch, "matrix difference");
  for (std::size_t i = 0; i < rows_; ++i) r_[i] -= b.r_[i];
  return *this;
}

Matrix Matrix::transpose() const {
  Matrix t(ring_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = r_[i].firstNonzero(0); j < cols_; j = r_[i].firstNonzero(j + 1))
      t.r_[j].set(i, r_[i].get(j));
  return t;
}

bool Matrix::isZero() const {
  for (const auto& r : r_)
    if (!r.isZero()) return false;
  return true;
}

bool Matrix::operator==(const Matrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && r_ == o.r_;
}

// ---------------------------------------------------------------- Echelon

Echelon::Echelon(Ring ring, std::size_t dim, std::size_t tagDim)
    : ring_(ring), dim_(dim), tagDim_(tagDim), pivotRow_(dim, -1) {}

Vec Echelon::reduce(Vec& v) const { return reduceImpl(v, tagDim_ > 0); }

Vec Echelon::reduceImpl(Vec& v, bool wantTag) const {
  Vec tag = wantTag ? Vec(ring_, tagDim_) : Vec();
  if (v.size() != dim_) throw Error(ErrorKind::DimensionMismatch, "reduce: vector of size " + std::to_string(v.size()) + " in ambient " + std::to_string(dim_));
  if (rows_.empty()) return tag;
  for (std::size_t p = v.firstNonzero(0); p < dim_; p = v.firstNonzero(p + 1)) {
    int r = pivotRow_[p];
    if (r < 0) continue;
    if (ring_ == Ring::F2) {
      v += rows_[r];
      if (wantTag) tag += tags_[r];
    } else {
      Rational c = v.get(p);
      v.addScaled(rows_[r], -c);
      if (wantTag) tag.addScaled(tags_[r], c);
    }
  }
  return tag;
}

bool Echelon::contains(const Vec& v) const {
  Vec w = v;
  reduceImpl(w, false);
  return w.isZero();
}

std::optional<Vec> Echelon::insert(Vec v, Vec tag) {
  if (tagDim_ && tag.size() != tagDim_) tag = Vec(ring_, tagDim_);
  Vec used = reduce(v);
  if (tagDim_) tag -= used;
  std::size_t p = v.firstNonzero(0);
  if (p >= dim_) {
    if (tagDim_) return tag;
    return Vec();
  }
  if (ring_ == Ring::Q) {
    Rational inv = 1 / v.get(p);
    v.scale(inv);
    if (tagDim_) tag.scale(inv);
  }
  pivotRow_[p] = static_cast<int>(rows_.size());
  rows_.push_back(std::move(v));
  if (tagDim_) tags_.push_back(std::move(tag));
  return std::nullopt;
}

// ---------------------------------------------------------------- helpers

std::size_t rank(const Matrix& m) {
  // eliminate along the shorter side
  Echelon e(m.ring(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) e.insert(m.row(i));
  return e.rank();
}

std::vector<Vec> kernel(const Matrix& m) {
  std::vector<Vec> cols = m.columns();
  Echelon e(m.ring(), m.rows(), m.cols());
  std::vector<Vec> ker;
  for (std::size_t j = 0; j < cols.size(); ++j) {
    auto rel = e.insert(std::move(cols[j]), Vec::unit(m.ring(), m.cols(), j));
    if (rel) ker.push_back(std::move(*rel));
  }
  return ker;
}

std::vector<Vec> imageBasis(const Matrix& m) {
  std::vector<Vec> cols = m.columns();
  return independentSubset(m.ring(), m.rows(), cols);
}

std::vector<Vec> independentSubset(Ring ring, std::size_t dim, const std::vector<Vec>& vs) {
  Echelon e(ring, dim);
  std::vector<Vec> out;
  for (const auto& c : vs)
    if (!e.insert(c)) out.push_back(c);
  return out;
}

LinearSolver::LinearSolver(const Matrix& a) : ech_(a.ring(), a.rows(), a.cols()), cols_(a.cols()) {
  std::vector<Vec> cols = a.columns();
  for (std::size_t j = 0; j < cols.size(); ++j) ech_.insert(std::move(cols[j]), Vec::unit(a.ring(), a.cols(), j));
}

std::optional<Vec> LinearSolver::solve(const Vec& b) const {
  Vec r = b;
  if (cols_ == 0) {
    if (!r.isZero()) return std::nullopt;
    return Vec(b.ring(), 0);
  }
  Vec t = ech_.reduce(r);
  if (!r.isZero()) return std::nullopt;
  return t;
}

// ---------------------------------------------------------------- Subspace

Subspace::Subspace(Ring ring, std::size_t ambient) : ech_(ring, ambient) {}

Subspace Subspace::span(Ring ring, std::size_t ambient, const std::vector<Vec>& gens) {
  Subspace s(ring, ambient);
  for (const auto& g : gens) s.add(g);
  return s;
}

Subspace Subspace::whole(Ring ring, std::size_t ambient) {
  Subspace s(ring, ambient);
  for (std::size_t i = 0; i < ambient; ++i) s.add(Vec::unit(ring, ambient, i));
  return s;
}

bool Subspace::add(const Vec& v) {
  if (!ech_.insert(v)) {
    basis_.push_back(v);
    return true;
  }
  return false;
}

bool Subspace::containsAll(const Subspace& o) const {
  for (const auto& b : o.basis_)
    if (!contains(b)) return false;
  return true;
}

Subspace Subspace::operator+(const Subspace& o) const {
  Subspace s = *this;
  for (const auto& b : o.basis_) s.add(b);
  return s;
}

Subspace Subspace::intersect(const Subspace& o) const {
  Ring ring = ech_.ring();
  std::size_t a = basis_.size(), b = o.basis_.size();
  Subspace out(ring, ambient());
  if (a == 0 || b == 0) return out;
  // relations among [U | V]; each gives sum x_i U_i in the intersection
  Echelon e(ring, ambient(), a + b);
  for (std::size_t i = 0; i < a; ++i) e.insert(basis_[i], Vec::unit(ring, a + b, i));
  for (std::size_t j = 0; j < b; ++j) {
    auto rel = e.insert(o.basis_[j], Vec::unit(ring, a + b, a + j));
    if (!rel) continue;
    Vec w(ring, ambient());
    for (std::size_t i = 0; i < a; ++i) {
      Rational c = rel->get(i);
      if (c != 0) w.addScaled(basis_[i], c);
    }
    out.add(w);
  }
  return out;
}

Matrix Subspace::basisMatrix() const { return Matrix::fromColumns(ech_.ring(), ambient(), basis_); }

Subspace preimage(const Matrix& m, const Subspace& dom, const Subspace& target) {
  Ring ring = m.ring();
  Subspace out(ring, m.cols());
  std::size_t k = dom.dim();
  Echelon e(ring, m.rows(), k);
  for (std::size_t i = 0; i < k; ++i) {
    Vec img = target.reduce(m.apply(dom.basis()[i]));
    auto rel = e.insert(std::move(img), Vec::unit(ring, k, i));
    if (!rel) continue;
    Vec w(ring, m.cols());
    for (std::size_t j = 0; j < k; ++j) {
      Rational c = rel->get(j);
      if (c != 0) w.addScaled(dom.basis()[j], c);
    }
    out.add(w);
  }
  return out;
}

Subspace imageOf(const Matrix& m, const Subspace& dom) {
  Subspace out(m.ring(), m.rows());
  for (const auto& b : dom.basis()) out.add(m.apply(b));
  return out;
}

// ---------------------------------------------------------------- Quotient

Quotient::Quotient(const Subspace& num, const Subspace& den) : ring_(num.ring()) {
  Echelon probe(ring_, num.ambient());
  for (const auto& b : den.basis()) probe.insert(b);
  for (const auto& b : num.basis())
    if (!probe.insert(b)) reps_.push_back(b);
  den_ = Echelon(ring_, num.ambient());
  for (const auto& b : den.basis()) den_.insert(b);
  std::size_t k = reps_.size();
  full_ = Echelon(ring_, num.ambient(), std::max<std::size_t>(k, 1));
  for (const auto& b : den.basis()) full_.insert(b, Vec(ring_, std::max<std::size_t>(k, 1)));
  for (std::size_t i = 0; i < k; ++i) full_.insert(reps_[i], Vec::unit(ring_, std::max<std::size_t>(k, 1), i));
}

std::optional<Vec> Quotient::tryClassOf(const Vec& x) const {
  Vec r = x;
  Vec t = full_.reduce(r);
  if (!r.isZero()) return std::nullopt;
  if (reps_.empty()) return Vec(ring_, 0);
  return t;
}

Vec Quotient::classOf(const Vec& x) const {
  auto c = tryClassOf(x);
  if (!c) throw Error(ErrorKind::ComputeError, "vector is not in the numerator subspace");
  return *c;
}

bool Quotient::inDenominator(const Vec& x) const { return den_.contains(x); }

}  // namespace ctop
