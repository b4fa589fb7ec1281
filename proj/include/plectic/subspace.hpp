#pragma once

#include <optional>
#include <vector>

#include "plectic/matrix.hpp"

namespace plectic {

/// Linear subspace of Q(i)^n in canonical form: the basis rows are in
/// reduced row echelon form (unit pivots, strictly increasing pivot columns,
/// zeros above and below each pivot).  Two subspaces are equal as sets iff
/// their canonical forms are identical, so operator== is structural.
class Subspace {
 public:
  Subspace() : ambient_(0) {}

  static Subspace zero(int ambient);
  static Subspace full(int ambient);
  /// Row space of the given vectors.  Throws on ragged input.
  static Subspace span(int ambient, const std::vector<Vec>& rows);

  int ambient() const { return ambient_; }
  int dim() const { return static_cast<int>(rows_.size()); }
  const std::vector<Vec>& basis() const { return rows_; }
  const std::vector<int>& pivots() const { return pivots_; }

  bool is_zero() const { return rows_.empty(); }
  bool is_full() const { return dim() == ambient_; }

  bool contains(const Vec& v) const;
  bool contains(const Subspace& other) const;

  /// Coordinates of v in the canonical basis; throws if v is not a member.
  Vec coordinates_of(const Vec& v) const;

  /// Image under a linear map given by an m x n matrix.
  Subspace image_under(const Mat& m) const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.rows_ == b.rows_;
  }
  friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }
  friend bool operator<(const Subspace& a, const Subspace& b);  // for ordered containers

 private:
  int ambient_;
  std::vector<Vec> rows_;
  std::vector<int> pivots_;

  friend Subspace sum(const Subspace&, const Subspace&);
  friend Subspace intersect(const Subspace&, const Subspace&);
  friend class RrefBuilder;
};

/// Incremental RREF accumulator: absorb vectors one at a time, tracking rank.
class RrefBuilder {
 public:
  explicit RrefBuilder(int ambient) : ambient_(ambient) {}

  /// Reduces v against the rows absorbed so far; if a nonzero residual
  /// remains it joins the basis and true is returned.
  bool absorb(Vec v);
  /// Reduces v without absorbing; returns the residual.
  Vec reduce(Vec v) const;

  int rank() const { return static_cast<int>(rows_.size()); }
  int ambient() const { return ambient_; }
  Subspace take();  // canonicalizes and returns the accumulated subspace

 private:
  int ambient_;
  std::vector<Vec> rows_;   // echelon, unit pivots, increasing pivot order kept
  std::vector<int> pivots_;
};

Subspace sum(const Subspace& a, const Subspace& b);
Subspace intersect(const Subspace& a, const Subspace& b);

/// Null space of a matrix, as a subspace of Q(i)^cols.
Subspace kernel_of(const Mat& m);

/// Canonical RREF of an explicit matrix (rows spanning a subspace).
Subspace rref(int ambient, const std::vector<Vec>& rows);

/// Data of the quotient A/B for B <= A: a distinguished complement basis
/// (rows of A's canonical basis independent from B) and the projection
/// matrix sending ambient column vectors to A/B coordinates.  For v in A,
/// projection.apply(v) are the coordinates of v + B in the complement basis.
struct QuotientMap {
  std::vector<Vec> complement;  // dim(A/B) vectors spanning a complement of B in A
  Mat projection;               // dim(A/B) x ambient
};

/// Throws if B is not contained in A.
QuotientMap quotient_map(const Subspace& a, const Subspace& b);

/// Anti-linear map v -> S * conj(v) on Q(i)^n.
struct AntiLinearMap {
  Mat s;

  int dim() const { return s.rows(); }
  Vec apply(const Vec& v) const { return s.apply(conj(v)); }
  /// Image of a subspace (anti-linear images of C-spans are C-spans).
  Subspace image(const Subspace& u) const;
  bool is_involution() const { return (s * s.conj()).is_identity(); }

  /// this after m: v -> S * conj(M v).
  AntiLinearMap after_linear(const Mat& m) const { return {s * m.conj()}; }
  /// m after this: v -> M S conj(v).
  AntiLinearMap then_linear(const Mat& m) const { return {m * s}; }
};

/// Realification Q(i)^n -> Q^{2n}: v maps to [Re v; Im v] (entries are real
/// Scalars).  complexify is the inverse.
Vec realify(const Vec& v);
Vec complexify(const Vec& v2n);

/// The Q-subspace of vectors fixed by an anti-linear involution, computed by
/// restriction of scalars.  `realified` lives in Q^{2n} in canonical form;
/// `complex_basis` is the same basis written in C^n coordinates.
struct FixedSpace {
  int complex_dim = 0;  // ambient C-dimension n
  Subspace realified;   // subspace of Q^{2n}
  std::vector<Vec> complex_basis;

  int qdim() const { return realified.dim(); }
};

/// Throws if tau is not an involution.
FixedSpace fixed_space(const AntiLinearMap& tau);

/// Q-span (inside the realification) of complex vectors.
Subspace rational_span(int complex_dim, const std::vector<Vec>& vectors);

}  // namespace plectic
