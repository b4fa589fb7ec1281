#pragma once

#include <map>
#include <string>
#include <vector>

#include "plectic/subspace.hpp"

namespace plectic {

struct FiltrationViolation {
  int lower_index = 0;
  int upper_index = 0;
  std::string what;
};

struct FiltrationReport {
  bool ok = true;
  int support_lo = 0;  // smallest stored jump index (0 when no steps)
  int support_hi = 0;
  std::vector<FiltrationViolation> violations;
};

/// Finite ascending filtration by subspaces, stored only on its support.
/// Below the smallest stored index the value is the zero space; at and above
/// the largest stored index it is the full ambient space (validated).
class AscFiltration {
 public:
  AscFiltration() : ambient_(0) {}
  explicit AscFiltration(int ambient) : ambient_(ambient) {}

  static AscFiltration single_jump(int ambient, int n);  // 0 below n, full at n

  int ambient() const { return ambient_; }
  void set_step(int n, Subspace s);
  const std::map<int, Subspace>& steps() const { return steps_; }

  /// Value W_n: the largest stored index <= n, zero space when none.
  Subspace at(int n) const;
  Subspace graded_piece_domain(int n) const { return at(n); }  // W_n itself

  /// Drops steps equal to their predecessor so only jump indices remain.
  void normalize();

  /// Jump indices after normalization semantics (value(n) != value(n-1)).
  std::vector<int> jumps() const;
  /// [lo, hi] with lo = first index with nonzero value, hi = first index
  /// attaining the full/top value.  Meaningful on valid filtrations.
  std::pair<int, int> support() const;

  FiltrationReport validate() const;

  friend bool operator==(const AscFiltration& a, const AscFiltration& b);
  friend bool operator!=(const AscFiltration& a, const AscFiltration& b) {
    return !(a == b);
  }

 private:
  int ambient_;
  std::map<int, Subspace> steps_;
};

/// Finite descending filtration.  Above the largest stored index the value
/// is zero; at and below the smallest it is the full ambient space.
class DescFiltration {
 public:
  DescFiltration() : ambient_(0) {}
  explicit DescFiltration(int ambient) : ambient_(ambient) {}

  static DescFiltration single_jump(int ambient, int n);  // full at n, 0 above n

  int ambient() const { return ambient_; }
  void set_step(int n, Subspace s);
  const std::map<int, Subspace>& steps() const { return steps_; }

  /// Value F^n: the smallest stored index >= n, zero space when none.
  Subspace at(int n) const;

  void normalize();
  std::vector<int> jumps() const;
  /// [lo, hi] with lo = largest index attaining the full value, hi = largest
  /// index with nonzero value.
  std::pair<int, int> support() const;

  FiltrationReport validate() const;

  friend bool operator==(const DescFiltration& a, const DescFiltration& b);
  friend bool operator!=(const DescFiltration& a, const DescFiltration& b) {
    return !(a == b);
  }

 private:
  int ambient_;
  std::map<int, Subspace> steps_;
};

/// Filtration induced on a subspace: n -> value(n) intersected with s.
AscFiltration induced_on(const AscFiltration& f, const Subspace& s);
DescFiltration induced_on(const DescFiltration& f, const Subspace& s);

/// Filtration induced on a quotient/image: n -> image of value(n) under m.
AscFiltration image_filtration(const AscFiltration& f, const Mat& m, int target_dim);
DescFiltration image_filtration(const DescFiltration& f, const Mat& m, int target_dim);

/// Filtration with every step S replaced by the intersection S cap r,
/// rewritten in the coordinates of r (basis coordinates).  Used to restrict
/// structures to a subspace viewed as its own ambient space.
AscFiltration restrict_to(const AscFiltration& f, const Subspace& r);
DescFiltration restrict_to(const DescFiltration& f, const Subspace& r);

}  // namespace plectic
