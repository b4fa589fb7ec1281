#include "plectic/matrix.hpp"

#include <stdexcept>

namespace plectic {

Mat Mat::identity(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = Scalar(1);
  return m;
}

Mat Mat::from_rows(const std::vector<Vec>& rows) {
  int r = static_cast<int>(rows.size());
  int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
  Mat m(r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[i].size()) != c)
      throw std::invalid_argument("ragged rows in matrix construction");
    for (int j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Vec Mat::row(int i) const {
  Vec v(cols_);
  for (int j = 0; j < cols_; ++j) v[j] = (*this)(i, j);
  return v;
}

Vec Mat::col(int j) const {
  Vec v(rows_);
  for (int i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

Mat Mat::transpose() const {
  Mat m(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
  return m;
}

Mat Mat::conj() const {
  Mat m(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j).conj();
  return m;
}

bool Mat::is_zero() const {
  for (const Scalar& s : a_)
    if (!s.is_zero()) return false;
  return true;
}

bool Mat::is_identity() const {
  if (rows_ != cols_) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if ((*this)(i, j) != (i == j ? Scalar(1) : Scalar(0))) return false;
  return true;
}

Vec Mat::apply(const Vec& v) const {
  if (static_cast<int>(v.size()) != cols_)
    throw std::invalid_argument("matrix/vector size mismatch");
  Vec w(rows_);
  for (int i = 0; i < rows_; ++i) {
    Scalar acc;
    for (int j = 0; j < cols_; ++j) {
      if (!(*this)(i, j).is_zero() && !v[j].is_zero()) acc += (*this)(i, j) * v[j];
    }
    w[i] = acc;
  }
  return w;
}

Mat Mat::pow(int k) const {
  if (rows_ != cols_) throw std::invalid_argument("pow of non-square matrix");
  if (k < 0) throw std::invalid_argument("negative matrix power");
  Mat acc = identity(rows_);
  for (int j = 0; j < k; ++j) acc = acc * (*this);
  return acc;
}

Mat Mat::kron(const Mat& other) const {
  Mat m(rows_ * other.rows_, cols_ * other.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) {
      const Scalar& c = (*this)(i, j);
      if (c.is_zero()) continue;
      for (int k = 0; k < other.rows_; ++k)
        for (int l = 0; l < other.cols_; ++l)
          m(i * other.rows_ + k, j * other.cols_ + l) = c * other(k, l);
    }
  return m;
}

Mat Mat::inverse() const {
  if (rows_ != cols_) throw std::invalid_argument("inverse of non-square matrix");
  int n = rows_;
  Mat aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = (*this)(i, j);
    aug(i, n + i) = Scalar(1);
  }
  int row = 0;
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int i = row; i < n; ++i)
      if (!aug(i, col).is_zero()) {
        pivot = i;
        break;
      }
    if (pivot < 0) throw std::invalid_argument("singular matrix has no inverse");
    if (pivot != row)
      for (int j = 0; j < 2 * n; ++j) std::swap(aug(pivot, j), aug(row, j));
    Scalar inv = aug(row, col).inverse();
    for (int j = 0; j < 2 * n; ++j) aug(row, j) *= inv;
    for (int i = 0; i < n; ++i) {
      if (i == row || aug(i, col).is_zero()) continue;
      Scalar f = aug(i, col);
      for (int j = 0; j < 2 * n; ++j) aug(i, j) -= f * aug(row, j);
    }
    ++row;
  }
  Mat out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = aug(i, n + j);
  return out;
}

int Mat::rank() const {
  Mat work = *this;
  int r = 0;
  for (int col = 0; col < cols_ && r < rows_; ++col) {
    int pivot = -1;
    for (int i = r; i < rows_; ++i)
      if (!work(i, col).is_zero()) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != r)
      for (int j = col; j < cols_; ++j) std::swap(work(pivot, j), work(r, j));
    Scalar inv = work(r, col).inverse();
    for (int j = col; j < cols_; ++j) work(r, j) *= inv;
    for (int i = r + 1; i < rows_; ++i) {
      if (work(i, col).is_zero()) continue;
      Scalar f = work(i, col);
      for (int j = col; j < cols_; ++j) work(i, j) -= f * work(r, j);
    }
    ++r;
  }
  return r;
}

Mat operator+(const Mat& a, const Mat& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    throw std::invalid_argument("matrix size mismatch in +");
  Mat m(a.rows_, a.cols_);
  for (std::size_t k = 0; k < a.a_.size(); ++k) m.a_[k] = a.a_[k] + b.a_[k];
  return m;
}

Mat operator-(const Mat& a, const Mat& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    throw std::invalid_argument("matrix size mismatch in -");
  Mat m(a.rows_, a.cols_);
  for (std::size_t k = 0; k < a.a_.size(); ++k) m.a_[k] = a.a_[k] - b.a_[k];
  return m;
}

Mat operator*(const Mat& a, const Mat& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix size mismatch in *");
  Mat m(a.rows_, b.cols_);
  for (int i = 0; i < a.rows_; ++i)
    for (int k = 0; k < a.cols_; ++k) {
      const Scalar& f = a(i, k);
      if (f.is_zero()) continue;
      for (int j = 0; j < b.cols_; ++j) {
        if (b(k, j).is_zero()) continue;
        m(i, j) += f * b(k, j);
      }
    }
  return m;
}

Mat operator*(const Scalar& c, Mat m) {
  for (int i = 0; i < m.rows_; ++i)
    for (int j = 0; j < m.cols_; ++j) m(i, j) *= c;
  return m;
}

bool operator==(const Mat& a, const Mat& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
}

Vec operator+(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector size mismatch");
  Vec v(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) v[k] = a[k] + b[k];
  return v;
}

Vec operator-(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector size mismatch");
  Vec v(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) v[k] = a[k] - b[k];
  return v;
}

Vec operator*(const Scalar& c, const Vec& v) {
  Vec w(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) w[k] = c * v[k];
  return w;
}

Vec conj(const Vec& v) {
  Vec w(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) w[k] = v[k].conj();
  return w;
}

Vec unit_vector(int n, int k) {
  Vec v(n);
  v[k] = Scalar(1);
  return v;
}

bool is_zero(const Vec& v) {
  for (const Scalar& s : v)
    if (!s.is_zero()) return false;
  return true;
}

Vec concat(const Vec& u, const Vec& v) {
  Vec w = u;
  w.insert(w.end(), v.begin(), v.end());
  return w;
}

Vec kron(const Vec& u, const Vec& v) {
  Vec w(u.size() * v.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i].is_zero()) continue;
    for (std::size_t j = 0; j < v.size(); ++j) w[i * v.size() + j] = u[i] * v[j];
  }
  return w;
}

}  // namespace plectic
