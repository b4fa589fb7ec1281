#include "plectic/subspace.hpp"

#include <algorithm>
#include <stdexcept>

namespace plectic {

bool RrefBuilder::absorb(Vec v) {
  if (static_cast<int>(v.size()) != ambient_)
    throw std::invalid_argument("vector length does not match ambient dimension");
  // Reduce against existing rows.
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    const Scalar& c = v[pivots_[k]];
    if (c.is_zero()) continue;
    Scalar f = c;  // pivot entries are 1
    for (int j = pivots_[k]; j < ambient_; ++j) v[j] -= f * rows_[k][j];
  }
  int pivot = -1;
  for (int j = 0; j < ambient_; ++j)
    if (!v[j].is_zero()) {
      pivot = j;
      break;
    }
  if (pivot < 0) return false;
  Scalar inv = v[pivot].inverse();
  for (int j = pivot; j < ambient_; ++j) v[j] *= inv;
  // Eliminate the new pivot column from existing rows.
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    const Scalar& c = rows_[k][pivot];
    if (c.is_zero()) continue;
    Scalar f = c;
    for (int j = pivot; j < ambient_; ++j) rows_[k][j] -= f * v[j];
  }
  // Insert keeping pivot columns increasing.
  std::size_t pos = 0;
  while (pos < pivots_.size() && pivots_[pos] < pivot) ++pos;
  rows_.insert(rows_.begin() + pos, std::move(v));
  pivots_.insert(pivots_.begin() + pos, pivot);
  return true;
}

Vec RrefBuilder::reduce(Vec v) const {
  if (static_cast<int>(v.size()) != ambient_)
    throw std::invalid_argument("vector length does not match ambient dimension");
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    const Scalar& c = v[pivots_[k]];
    if (c.is_zero()) continue;
    Scalar f = c;
    for (int j = pivots_[k]; j < ambient_; ++j) v[j] -= f * rows_[k][j];
  }
  return v;
}

Subspace RrefBuilder::take() {
  Subspace s;
  s.ambient_ = ambient_;
  s.rows_ = std::move(rows_);
  s.pivots_ = std::move(pivots_);
  rows_.clear();
  pivots_.clear();
  return s;
}

Subspace Subspace::zero(int ambient) {
  if (ambient < 0) throw std::invalid_argument("negative ambient dimension");
  Subspace s;
  s.ambient_ = ambient;
  return s;
}

Subspace Subspace::full(int ambient) {
  Subspace s = zero(ambient);
  for (int k = 0; k < ambient; ++k) {
    s.rows_.push_back(unit_vector(ambient, k));
    s.pivots_.push_back(k);
  }
  return s;
}

Subspace Subspace::span(int ambient, const std::vector<Vec>& rows) {
  RrefBuilder b(ambient);
  for (const Vec& r : rows) b.absorb(r);
  return b.take();
}

bool Subspace::contains(const Vec& v) const {
  if (static_cast<int>(v.size()) != ambient_)
    throw std::invalid_argument("vector length does not match ambient dimension");
  Vec w = v;
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    const Scalar& c = w[pivots_[k]];
    if (c.is_zero()) continue;
    Scalar f = c;
    for (int j = pivots_[k]; j < ambient_; ++j) w[j] -= f * rows_[k][j];
  }
  return plectic::is_zero(w);
}

bool Subspace::contains(const Subspace& other) const {
  if (ambient_ != other.ambient_)
    throw std::invalid_argument("ambient dimension mismatch");
  if (other.dim() > dim()) return false;
  for (const Vec& r : other.rows_)
    if (!contains(r)) return false;
  return true;
}

Vec Subspace::coordinates_of(const Vec& v) const {
  Vec w = v;
  Vec coords(rows_.size());
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    Scalar c = w[pivots_[k]];
    coords[k] = c;
    if (c.is_zero()) continue;
    for (int j = pivots_[k]; j < ambient_; ++j) w[j] -= c * rows_[k][j];
  }
  if (!plectic::is_zero(w))
    throw std::invalid_argument("vector is not a member of the subspace");
  return coords;
}

Subspace Subspace::image_under(const Mat& m) const {
  if (m.cols() != ambient_)
    throw std::invalid_argument("map source does not match ambient dimension");
  RrefBuilder b(m.rows());
  for (const Vec& r : rows_) b.absorb(m.apply(r));
  return b.take();
}

bool operator<(const Subspace& a, const Subspace& b) {
  if (a.ambient_ != b.ambient_) return a.ambient_ < b.ambient_;
  if (a.rows_.size() != b.rows_.size()) return a.rows_.size() < b.rows_.size();
  for (std::size_t i = 0; i < a.rows_.size(); ++i)
    for (std::size_t j = 0; j < a.rows_[i].size(); ++j) {
      const Scalar &x = a.rows_[i][j], &y = b.rows_[i][j];
      if (x != y) {
        if (x.re() != y.re()) return x.re() < y.re();
        return x.im() < y.im();
      }
    }
  return false;
}

Subspace sum(const Subspace& a, const Subspace& b) {
  if (a.ambient_ != b.ambient_)
    throw std::invalid_argument("ambient dimension mismatch in sum");
  RrefBuilder acc(a.ambient_);
  for (const Vec& r : a.rows_) acc.absorb(r);
  for (const Vec& r : b.rows_) acc.absorb(r);
  return acc.take();
}

Subspace intersect(const Subspace& a, const Subspace& b) {
  if (a.ambient_ != b.ambient_)
    throw std::invalid_argument("ambient dimension mismatch in intersect");
  int n = a.ambient_;
  // Zassenhaus: row-reduce [A|A] stacked on [B|0]; rows with zero left half
  // carry an intersection basis in the right half.
  RrefBuilder acc(2 * n);
  for (const Vec& r : a.rows_) acc.absorb(concat(r, r));
  for (const Vec& r : b.rows_) acc.absorb(concat(r, Vec(n)));
  Subspace stacked = acc.take();
  RrefBuilder out(n);
  for (std::size_t k = 0; k < stacked.basis().size(); ++k) {
    if (stacked.pivots()[k] < n) continue;
    const Vec& row = stacked.basis()[k];
    out.absorb(Vec(row.begin() + n, row.end()));
  }
  return out.take();
}

Subspace rref(int ambient, const std::vector<Vec>& rows) {
  return Subspace::span(ambient, rows);
}

Subspace kernel_of(const Mat& m) {
  int n = m.cols();
  std::vector<Vec> rows;
  rows.reserve(m.rows());
  for (int i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));
  Subspace rowspace = Subspace::span(n, rows);
  std::vector<bool> is_pivot(n, false);
  for (int p : rowspace.pivots()) is_pivot[p] = true;
  RrefBuilder ker(n);
  // Free columns parametrize the kernel.
  for (int j = 0; j < n; ++j) {
    if (is_pivot[j]) continue;
    Vec v(n);
    v[j] = Scalar(1);
    for (int k = 0; k < rowspace.dim(); ++k) {
      const Vec& row = rowspace.basis()[k];
      if (!row[j].is_zero()) v[rowspace.pivots()[k]] = -row[j];
    }
    ker.absorb(v);
  }
  return ker.take();
}

QuotientMap quotient_map(const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient())
    throw std::invalid_argument("ambient dimension mismatch in quotient");
  if (!a.contains(b))
    throw std::invalid_argument("quotient_map requires B to be a subspace of A");
  int n = a.ambient();
  // Extend B's basis to A by greedily absorbing A's canonical rows; the rows
  // that enlarge the span form the distinguished complement.
  RrefBuilder span_b(n);
  for (const Vec& r : b.basis()) span_b.absorb(r);
  std::vector<Vec> complement;
  for (const Vec& r : a.basis())
    if (span_b.absorb(r)) complement.push_back(r);

  // Complete [B-basis; complement] to an ambient basis, then invert: the
  // coordinate functionals of the complement block give the projection.
  std::vector<Vec> basis_rows = b.basis();
  basis_rows.insert(basis_rows.end(), complement.begin(), complement.end());
  RrefBuilder span_all(n);
  for (const Vec& r : basis_rows) span_all.absorb(r);
  for (int k = 0; k < n && static_cast<int>(basis_rows.size()) < n; ++k) {
    Vec e = unit_vector(n, k);
    if (span_all.absorb(e)) basis_rows.push_back(e);
  }
  Mat rows_mat = Mat::from_rows(basis_rows);
  // v = x * rows_mat (x the coordinate row vector), so x^T = (rows_mat^T)^{-1} v^T.
  Mat coord = rows_mat.transpose().inverse();
  int c = static_cast<int>(complement.size());
  Mat projection(c, n);
  for (int i = 0; i < c; ++i)
    for (int j = 0; j < n; ++j) projection(i, j) = coord(b.dim() + i, j);
  return QuotientMap{std::move(complement), std::move(projection)};
}

Subspace AntiLinearMap::image(const Subspace& u) const {
  RrefBuilder b(s.rows());
  for (const Vec& r : u.basis()) b.absorb(apply(r));
  return b.take();
}

Vec realify(const Vec& v) {
  Vec w(2 * v.size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    w[k] = Scalar(v[k].re());
    w[v.size() + k] = Scalar(v[k].im());
  }
  return w;
}

Vec complexify(const Vec& v2n) {
  if (v2n.size() % 2 != 0)
    throw std::invalid_argument("realified vector has odd length");
  std::size_t n = v2n.size() / 2;
  Vec v(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (!v2n[k].is_real() || !v2n[n + k].is_real())
      throw std::invalid_argument("realified vector has non-real entries");
    v[k] = Scalar(v2n[k].re(), v2n[n + k].re());
  }
  return v;
}

FixedSpace fixed_space(const AntiLinearMap& tau) {
  if (!tau.is_involution())
    throw std::invalid_argument("fixed_space requires an anti-linear involution");
  int n = tau.dim();
  // Write S = A + iB and v = x + iy; tau(v) = v becomes the rational system
  //   (A - I) x + B y = 0,   B x - (A + I) y = 0.
  Mat sys(2 * n, 2 * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Scalar& sij = tau.s(i, j);
      sys(i, j) = Scalar(sij.re());
      sys(i, n + j) = Scalar(sij.im());
      sys(n + i, j) = Scalar(sij.im());
      sys(n + i, n + j) = Scalar(-sij.re());
    }
  for (int k = 0; k < 2 * n; ++k) sys(k, k) -= Scalar(1);

  FixedSpace out;
  out.complex_dim = n;
  out.realified = kernel_of(sys);
  for (const Vec& r : out.realified.basis()) out.complex_basis.push_back(complexify(r));
  return out;
}

Subspace rational_span(int complex_dim, const std::vector<Vec>& vectors) {
  RrefBuilder b(2 * complex_dim);
  for (const Vec& v : vectors) {
    if (static_cast<int>(v.size()) != complex_dim)
      throw std::invalid_argument("vector length does not match ambient dimension");
    b.absorb(realify(v));
  }
  return b.take();
}

}  // namespace plectic
