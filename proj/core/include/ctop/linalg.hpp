#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ctop/error.hpp"

namespace ctop {

using Rational = boost::multiprecision::mpq_rational;

enum class Ring { F2, Q };

const char* ringName(Ring r);
Ring parseRing(const std::string& s);

// Dense vector over F2 (packed bits) or Q.
class Vec {
 public:
  Vec() = default;
  Vec(Ring ring, std::size_t n);

  static Vec unit(Ring ring, std::size_t n, std::size_t i);

  Ring ring() const { return ring_; }
  std::size_t size() const { return n_; }

  bool isZero() const;
  Rational get(std::size_t i) const;
  void set(std::size_t i, const Rational& x);
  void set(std::size_t i, long x) { set(i, Rational(x)); }
  bool nonzero(std::size_t i) const;

  // index of first nonzero entry at or after `from`, or size() if none
  std::size_t firstNonzero(std::size_t from = 0) const;
  std::size_t count() const;  // number of nonzero entries

  Vec& operator+=(const Vec& o);
  Vec& operator-=(const Vec& o);
  void addScaled(const Vec& o, const Rational& c);
  void scale(const Rational& c);
  Rational dot(const Vec& o) const;

  Vec slice(std::size_t off, std::size_t len) const;
  void place(std::size_t off, const Vec& piece);  // overwrite [off, off+len)
  void addInto(std::size_t off, const Vec& piece);  // add into [off, off+len)

  bool operator==(const Vec& o) const;
  bool operator!=(const Vec& o) const { return !(*this == o); }
  bool operator<(const Vec& o) const;  // arbitrary but deterministic total order

  std::string str() const;  // 0/1 string over F2, comma-separated rationals over Q

  const std::vector<std::uint64_t>& words() const { return bits_; }

 private:
  void checkCompat(const Vec& o) const;

  Ring ring_ = Ring::F2;
  std::size_t n_ = 0;
  std::vector<std::uint64_t> bits_;
  std::vector<Rational> q_;
};

Vec operator+(Vec a, const Vec& b);
Vec operator-(Vec a, const Vec& b);

// Row-major matrix built from row vectors.
class Matrix {
 public:
  Matrix() = default;
  Matrix(Ring ring, std::size_t rows, std::size_t cols);

  static Matrix identity(Ring ring, std::size_t n);
  static Matrix fromColumns(Ring ring, std::size_t rows, const std::vector<Vec>& cols);
  static Matrix fromRows(Ring ring, std::size_t cols, std::vector<Vec> rows);

  Ring ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational get(std::size_t i, std::size_t j) const { return r_[i].get(j); }
  void set(std::size_t i, std::size_t j, const Rational& x) { r_[i].set(j, x); }
  void set(std::size_t i, std::size_t j, long x) { r_[i].set(j, x); }
  const Vec& row(std::size_t i) const { return r_[i]; }
  Vec& row(std::size_t i) { return r_[i]; }
  Vec column(std::size_t j) const;
  std::vector<Vec> columns() const;

  Vec apply(const Vec& x) const;
  Matrix operator*(const Matrix& b) const;
  Matrix& operator+=(const Matrix& b);
  Matrix& operator-=(const Matrix& b);
  Matrix transpose() const;
  bool isZero() const;
  bool operator==(const Matrix& o) const;
  bool operator!=(const Matrix& o) const { return !(*this == o); }

 private:
  Ring ring_ = Ring::F2;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Vec> r_;
};

// Incremental semi-echelon basis of a subspace. Each stored row has its pivot
// as its first nonzero entry (normalized to 1). Optional tags record a linear
// "provenance" for each row so that reductions report how a vector decomposes.
class Echelon {
 public:
  Echelon() = default;
  Echelon(Ring ring, std::size_t dim, std::size_t tagDim = 0);

  Ring ring() const { return ring_; }
  std::size_t dim() const { return dim_; }
  std::size_t tagDim() const { return tagDim_; }
  std::size_t rank() const { return rows_.size(); }

  // v <- v - (combination of rows); returns the combination's tag when tagDim > 0
  Vec reduce(Vec& v) const;
  bool contains(const Vec& v) const;

  // Inserts v with tag t. Returns nullopt if v was independent, otherwise the
  // reduced tag (a relation: the tag combination mapping to zero).
  std::optional<Vec> insert(Vec v, Vec tag = {});

  const std::vector<Vec>& rows() const { return rows_; }

 private:
  Vec reduceImpl(Vec& v, bool wantTag) const;

  Ring ring_ = Ring::F2;
  std::size_t dim_ = 0, tagDim_ = 0;
  std::vector<Vec> rows_, tags_;
  std::vector<int> pivotRow_;
};

std::size_t rank(const Matrix& m);
// basis of {x : m x = 0}
std::vector<Vec> kernel(const Matrix& m);
// independent columns of m, in column order (original column vectors)
std::vector<Vec> imageBasis(const Matrix& m);
std::vector<Vec> independentSubset(Ring ring, std::size_t dim, const std::vector<Vec>& vs);

// Solves A x = b for many right-hand sides.
class LinearSolver {
 public:
  LinearSolver() = default;
  explicit LinearSolver(const Matrix& a);
  std::optional<Vec> solve(const Vec& b) const;

 private:
  Echelon ech_;
  std::size_t cols_ = 0;
};

// A subspace given by an independent basis, with membership tests.
class Subspace {
 public:
  Subspace() = default;
  Subspace(Ring ring, std::size_t ambient);
  static Subspace span(Ring ring, std::size_t ambient, const std::vector<Vec>& gens);
  static Subspace whole(Ring ring, std::size_t ambient);

  Ring ring() const { return ech_.ring(); }
  std::size_t ambient() const { return ech_.dim(); }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<Vec>& basis() const { return basis_; }

  bool add(const Vec& v);  // true if it enlarged the space
  bool contains(const Vec& v) const { return ech_.contains(v); }
  bool containsAll(const Subspace& o) const;
  Vec reduce(Vec v) const { ech_.reduce(v); return v; }

  Subspace operator+(const Subspace& o) const;
  Subspace intersect(const Subspace& o) const;
  bool operator==(const Subspace& o) const { return dim() == o.dim() && containsAll(o); }

  Matrix basisMatrix() const;  // ambient x dim, columns = basis

 private:
  Echelon ech_;
  std::vector<Vec> basis_;
};

// {x in dom : m x in target}
Subspace preimage(const Matrix& m, const Subspace& dom, const Subspace& target);
// m(dom)
Subspace imageOf(const Matrix& m, const Subspace& dom);

// Quotient num / den (den contained in num) with explicit coset representatives.
class Quotient {
 public:
  Quotient() = default;
  Quotient(const Subspace& num, const Subspace& den);

  std::size_t dim() const { return reps_.size(); }
  const std::vector<Vec>& reps() const { return reps_; }
  // coordinates of x in the rep basis; throws if x is not in num
  Vec classOf(const Vec& x) const;
  std::optional<Vec> tryClassOf(const Vec& x) const;
  bool inDenominator(const Vec& x) const;

 private:
  Ring ring_ = Ring::F2;
  Echelon den_;
  Echelon full_;
  std::vector<Vec> reps_;
};

}  // namespace ctop
