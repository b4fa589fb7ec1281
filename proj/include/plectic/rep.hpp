#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "plectic/subspace.hpp"

namespace plectic {

/// Pair of multi-indices (p, q) in Z^g x Z^g; ordered lexicographically so
/// that piece maps iterate deterministically.
struct BiDegree {
  std::vector<int> p, q;

  friend bool operator<(const BiDegree& a, const BiDegree& b) {
    if (a.p != b.p) return a.p < b.p;
    return a.q < b.q;
  }
  friend bool operator==(const BiDegree& a, const BiDegree& b) {
    return a.p == b.p && a.q == b.q;
  }
};

/// Object of the explicit triple presentation: a 2g-graded space together
/// with g commuting automorphisms whose (t - 1) parts strictly lower the
/// corresponding bidegree component.
struct PlecticRep {
  int g = 0;
  int dim = 0;
  std::map<BiDegree, Subspace> pieces;  // only nonzero pieces stored
  std::vector<Mat> t;                   // g matrices, dim x dim

  const Subspace* piece(const BiDegree& d) const {
    auto it = pieces.find(d);
    return it == pieces.end() ? nullptr : &it->second;
  }

  /// Sum of the pieces whose bidegree satisfies pred.
  template <typename Pred>
  Subspace piece_sum(Pred&& pred) const {
    RrefBuilder b(dim);
    for (const auto& [deg, sub] : pieces)
      if (pred(deg))
        for (const Vec& r : sub.basis()) b.absorb(r);
    return b.take();
  }
};

struct RepViolation {
  std::string what;
  int mu = 0;                    // 1-based index when relevant
  std::optional<BiDegree> at;    // offending piece
};

struct RepReport {
  bool ok = true;
  std::vector<RepViolation> violations;

  std::string summary() const;
};

/// Checks the direct-sum decomposition, pairwise commutativity of the t's,
/// and the bidegree-lowering inclusion for each (mu, p, q).  Structural
/// report; never throws on invalid data.
RepReport validate_rep(const PlecticRep& u);

struct RepMorphism {
  PlecticRep source, target;
  Mat matrix;  // target.dim x source.dim
};

RepReport validate_morphism(const RepMorphism& f);

/// Tensor product: graded pieces convolve, t_mu = t'_mu (x) t''_mu.
/// Coordinates of the result follow the Kronecker convention
/// (e_i (x) f_j) -> index i * dim(U) + j.
PlecticRep tensor(const PlecticRep& t, const PlecticRep& u);

/// Internal hom; coordinates are row-major flattenings of matrices
/// target.dim x source.dim in the standard bases.
PlecticRep internal_hom(const PlecticRep& t, const PlecticRep& u);

/// Exterior product: indices concatenate, t's act on their own factor.
PlecticRep exterior(const PlecticRep& t, const PlecticRep& u);

/// One-dimensional twist with sole piece at p = q = -n and all t = 1.
PlecticRep tate(const std::vector<int>& n);

/// Pads indices with zeros and t's with identities up to rank g.
PlecticRep include_rep(const PlecticRep& u, int g);

/// Direct sum (block construction on concatenated coordinates).
PlecticRep direct_sum(const PlecticRep& a, const PlecticRep& b);

/// Conjugates every datum by an invertible matrix c (new = c . old).
PlecticRep change_basis(const PlecticRep& u, const Mat& c);

/// The linear map alpha -> post . alpha . pre on row-major flattened
/// matrices; equals post (x) pre^T.  Shared by the hom construction,
/// realforms and the hom complex.
Mat flat_hom_map(const Mat& post, const Mat& pre);

}  // namespace plectic
