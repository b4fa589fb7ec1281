#pragma once

#include "plectic/weak.hpp"

namespace plectic {

/// Partial weight and Hodge filtrations of a triple-presentation object:
/// W^mu from the mu-th index totals, F_mu = t_mu(high p_mu part),
/// Fbar_mu = t_mu^{-1}(high q_mu part).  The result is a Fil^g_g object.
MultiFiltered phi_g(const PlecticRep& u);

/// One step of the inverse construction together with its transports; kept
/// so that real structures and round-trip data can be carried through.
struct PsiGResult {
  PlecticRep rep;                   // same ambient dimension, new coordinates
  Mat iso;                          // composite comparison V -> phi_g(rep)
  std::vector<GradedWeights> steps; // one graded decomposition per index
};

/// Inverse of phi_g on orthogonal families, built by grading one index at a
/// time; throws std::invalid_argument when a step is not mixed Hodge.
PsiGResult psi_g(const MultiFiltered& v);

/// Transport of an anti-linear matrix through all recorded steps
/// (quotient-induced at each stage); carries real structures along psi_g.
Mat transport_antilinear_through(const std::vector<GradedWeights>& steps, Mat s);

/// Exact round-trip identity: transports the original pieces and
/// automorphisms of u through the steps of psi_g(phi_g(u)) and compares them
/// with the reconstructed data.  `why` receives a diagnostic on failure.
bool psi_phi_roundtrip_identity(const PlecticRep& u, std::string* why = nullptr);

/// Checks that iso carries every filtration step of v onto the matching
/// step of w (an isomorphism of multi-filtered objects).
bool filtered_isomorphism(const MultiFiltered& v, const MultiFiltered& w, const Mat& iso);

}  // namespace plectic
