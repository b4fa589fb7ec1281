#pragma once

#include "plectic/realforms.hpp"

namespace plectic {

/// Bounded complex of real triple-presentation objects; d[k] maps
/// objects[k] to objects[k+1] and consecutive differentials compose to zero.
struct RepComplex {
  int lo = 0;
  std::vector<RealPlecticRep> objects;
  std::vector<Mat> d;  // size objects.size() - 1 (empty allowed)

  int hi() const { return lo + static_cast<int>(objects.size()) - 1; }
  const RealPlecticRep* object_at(int degree) const {
    int k = degree - lo;
    if (k < 0 || k >= static_cast<int>(objects.size())) return nullptr;
    return &objects[k];
  }
};

RepComplex single_object_complex(RealPlecticRep u, int degree = 0);
RepReport validate_complex(const RepComplex& c);

/// Bounded complex of rational vector spaces with explicit differentials;
/// entries are real scalars throughout.
struct CochainComplex {
  int lo = 0;
  std::vector<int> dims;
  std::vector<Mat> d;  // d[k]: dims[k] -> dims[k+1]
  std::vector<std::vector<std::string>> labels;  // per degree, per basis vector

  int hi() const { return lo + static_cast<int>(dims.size()) - 1; }
  int dim_at(int degree) const {
    int k = degree - lo;
    return (k < 0 || k >= static_cast<int>(dims.size())) ? 0 : dims[k];
  }
};

/// The complex-linear sum of pieces with the mu-th bidegree at the origin
/// (m = 0) or strictly negative on both sides (m = 1).
Subspace a_space(const RealPlecticRep& u, int mu, int m);

/// The rational subspace of the realification fixed by
/// (-t_1)^{m_1} ... (-t_g)^{m_g} . sigma inside the intersection of the
/// chosen a_spaces; returned in canonical form in Q^{2 dim}.
Subspace a_multi(const RealPlecticRep& u, const std::vector<int>& m);

/// Rational matrix of a complex-linear map between rational subspaces of the
/// realifications; throws when the image leaves the target.
Mat rational_matrix_between(const Subspace& src, const Subspace& tgt,
                            const Mat& complex_map);

/// Total complex of the (g+1)-fold array of the fixed rational subspaces,
/// with differentials t_mu - 1 in the g twist directions and the complex
/// differential last; the sign of the j-th partial on a block is (-1) to the
/// sum of the preceding indices.  Verifies d . d = 0.
CochainComplex lambda_complex(const RepComplex& c);

struct Cohomology {
  std::map<int, int> dims;
  std::map<int, std::vector<Vec>> representatives;  // cocycles spanning H
};

Cohomology cohomology(const CochainComplex& c);

/// Extension groups out of the unit object, as dimensions of the cohomology
/// of the total complex.
Cohomology ext_groups(const RepComplex& c);

/// Fixed part under the last g - mu factors: the subrepresentation on which
/// those automorphisms act trivially through the zero bidegrees, with the
/// induced rank-mu structure.
RealPlecticRep gamma(const RealPlecticRep& u, int mu);

/// Rational dimension and basis of the full fixed part (mu = 0).
FixedSpace gamma0(const RealPlecticRep& u);

struct BcSpaces {
  Subspace b;        // rational subspace of the realification
  int c_dim = 0;     // dimension of the cokernel
  Subspace c_image;  // image of t_{mu+1} - 1 inside the ambient b-target
  Subspace c_target; // the space being quotiented
};

/// Iterated kernels (and the final cokernel) of t_{mu+1} - 1 acting on the
/// fixed rational subspaces; indices in {0,1} of length mu.
BcSpaces bc_spaces(const RealPlecticRep& u, int mu, const std::vector<int>& m);

/// Hom complex with differential f -> d_U . f - (-1)^n f . d_T.
RepComplex hom_complex(const RepComplex& t, const RepComplex& u);

/// H^m of the fixed part of the hom complex (maps up to homotopy).
int homotopy_hom(const RepComplex& t, const RepComplex& u, int m);

}  // namespace plectic
