#pragma once

#include <vector>

#include "plectic/scalar.hpp"

namespace plectic {

using Vec = std::vector<Scalar>;

/// Dense matrix over Q(i), row-major.  Linear maps act on column vectors:
/// w = M.apply(v).
class Mat {
 public:
  Mat() : rows_(0), cols_(0) {}
  Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  static Mat identity(int n);
  static Mat zero(int rows, int cols) { return Mat(rows, cols); }
  static Mat from_rows(const std::vector<Vec>& rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Scalar& operator()(int i, int j) { return a_[i * cols_ + j]; }
  const Scalar& operator()(int i, int j) const { return a_[i * cols_ + j]; }

  Vec row(int i) const;
  Vec col(int j) const;

  Mat transpose() const;
  Mat conj() const;  // entrywise conjugation
  bool is_zero() const;
  bool is_identity() const;

  Vec apply(const Vec& v) const;
  Mat pow(int k) const;  // k >= 0

  /// Kronecker product; block (i,j) of the result is (*this)(i,j) * other.
  Mat kron(const Mat& other) const;

  /// Inverse via Gauss-Jordan elimination; throws on a singular matrix.
  Mat inverse() const;

  int rank() const;

  friend Mat operator+(const Mat& a, const Mat& b);
  friend Mat operator-(const Mat& a, const Mat& b);
  friend Mat operator*(const Mat& a, const Mat& b);
  friend Mat operator*(const Scalar& c, Mat m);
  friend bool operator==(const Mat& a, const Mat& b);
  friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }

 private:
  int rows_, cols_;
  std::vector<Scalar> a_;
};

Vec operator+(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);
Vec operator*(const Scalar& c, const Vec& v);
Vec conj(const Vec& v);
Vec unit_vector(int n, int k);
bool is_zero(const Vec& v);

/// Concatenation u ++ v.
Vec concat(const Vec& u, const Vec& v);

/// Kronecker product of coordinate vectors, (u kron v)[i*dim(v)+j] = u_i v_j.
Vec kron(const Vec& u, const Vec& v);

}  // namespace plectic
