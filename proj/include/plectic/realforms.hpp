#pragma once

#include "plectic/functors.hpp"

namespace plectic {

/// Triple-presentation object with a real structure: an anti-linear
/// involution exchanging conjugate pieces and inverting the automorphisms.
struct RealPlecticRep {
  PlecticRep rep;
  Mat sigma;  // anti-linear action v -> sigma . conj(v)

  AntiLinearMap structure() const { return AntiLinearMap{sigma}; }
};

/// Filtered object with a real structure; covers the orthogonal-family,
/// weak and subset-independent shapes (distinguished by v.l()).
struct RealMultiFiltered {
  MultiFiltered v;
  Mat sigma;

  AntiLinearMap structure() const { return AntiLinearMap{sigma}; }
};

/// sigma^2 = 1, sigma(U^{p,q}) = U^{q,p}, sigma t_mu sigma = t_mu^{-1}.
RepReport validate_real(const RealPlecticRep& u);

/// sigma^2 = 1, every weight step sigma-stable with a rational fixed basis
/// of the right size, sigma(F_mu) = Fbar_mu.
RepReport validate_real(const RealMultiFiltered& v);

/// Real morphisms are complex morphisms commuting with the structures.
RepReport validate_real_morphism(const RealPlecticRep& s, const RealPlecticRep& t,
                                 const Mat& f);

/// One-dimensional twist with sigma = (-1)^{|n|} conj; its rational points
/// are spanned by 1 for even |n| and by i for odd |n|.
RealPlecticRep tate_real(const std::vector<int>& n);

RealPlecticRep tensor(const RealPlecticRep& a, const RealPlecticRep& b);
RealPlecticRep internal_hom(const RealPlecticRep& a, const RealPlecticRep& b);
RealPlecticRep exterior(const RealPlecticRep& a, const RealPlecticRep& b);
RealPlecticRep direct_sum(const RealPlecticRep& a, const RealPlecticRep& b);
RealPlecticRep include_rep(const RealPlecticRep& u, int g);
RealPlecticRep change_basis(const RealPlecticRep& u, const Mat& c);

/// The real functors transport sigma along the complex ones: phi/T/P keep
/// it, psi passes to the graded structure.
RealMultiFiltered phi_real(const RealPlecticRep& u);

struct PsiRealResult {
  RealPlecticRep rep;
  Mat iso;
  std::vector<GradedWeights> steps;
};

PsiRealResult psi_real(const RealMultiFiltered& v);

RealMultiFiltered total_weight_real(const RealMultiFiltered& v);
RealMultiFiltered partial_weights_real(const RealMultiFiltered& v,
                                       const std::vector<int>& I);

/// Rational points of a real object: the fixed space of sigma.
FixedSpace rational_points(const RealPlecticRep& u);

}  // namespace plectic
