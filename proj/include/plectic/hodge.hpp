#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "plectic/filtration.hpp"
#include "plectic/rep.hpp"

namespace plectic {

/// Mixed Hodge structure data: one ascending weight filtration and the two
/// descending Hodge filtrations on the same space.
struct MixedHodge {
  int dim = 0;
  AscFiltration w;
  DescFiltration f, fbar;
};

struct MhsReport {
  bool ok = true;
  std::vector<int> failing_weights;
  std::vector<std::string> issues;
};

/// True iff the two filtrations are n-opposed: V = F^p (+) Fbar^{n+1-p} for
/// every p (checked on the finite grid where the pair can change).
bool validate_pure(int dim, const DescFiltration& f, const DescFiltration& fbar, int n);

/// The bigrading route: pieces F^p cap Fbar^q with p + q = n, when they are
/// independent and exhaust the space; nullopt otherwise.
std::optional<std::map<std::pair<int, int>, Subspace>> pure_bigrading(
    int dim, const DescFiltration& f, const DescFiltration& fbar, int n);

/// Checks that each graded weight piece is pure of that weight.
MhsReport validate_mhs(const MixedHodge& v);

/// Graded piece machinery of the weight filtration: per jump weight, the
/// quotient map onto Gr_n and the filtrations it induces there.
struct GradedWeights {
  std::vector<int> weights;            // ascending W-jumps
  std::vector<QuotientMap> blocks;     // per weight
  std::vector<int> offsets;            // block offsets in (+) Gr_n
  int total = 0;
  int old_dim = 0;
  AscFiltration w;                     // the filtration being graded

  int block_index(int weight) const;   // -1 when Gr at that weight is zero
  int block_dim(int k) const;
  /// total x old_dim matrix: project to Gr at block k, embedded.
  Mat block_map(int k) const;
  Vec embed(int k, const Vec& block_vec) const;

  /// Quotient-induced transport of a subspace: sum over n of the embedded
  /// images of (s cap W_n) in Gr_n.
  Subspace transport(const Subspace& s) const;
  AscFiltration transport(const AscFiltration& f) const;
  DescFiltration transport(const DescFiltration& f) const;
  /// Induced endomorphism on (+) Gr_n; requires m(W_n) <= W_n for all steps.
  Mat transport_endo(const Mat& m) const;
  /// Induced anti-linear matrix; requires sigma(W_n) = W_n.
  Mat transport_antilinear(const Mat& s) const;
};

GradedWeights graded_weights(int dim, const AscFiltration& w);

/// Raw evaluation of the splitting formula
///   A^{p,q} = (F^p cap W_n) cap ((Fbar^q cap W_n) + sum_j (Fbar^{q-j} cap W_{n-j-1}))
/// with n = p + q and the j-sum truncated where W vanishes.  No validity
/// precondition; conjugate = true exchanges the roles of F and Fbar.
std::map<std::pair<int, int>, Subspace> deligne_pieces(const MixedHodge& v,
                                                       bool conjugate = false);

/// Validated Deligne splitting; throws std::invalid_argument when the input
/// is not a mixed Hodge structure.
std::map<std::pair<int, int>, Subspace> deligne_splitting(const MixedHodge& v,
                                                          bool conjugate = false);

struct HodgeMorphism {
  MixedHodge source, target;
  Mat matrix;
};

/// Compatibility with W, F, Fbar (not validity of the ends).
RepReport validate_hodge_morphism(const HodgeMorphism& f);

/// One strictness equality: f(sum_{(p,n) in S} (F^p cap W_n) U) equals
/// f(U) cap sum_{(p,n) in S} (F^p cap W_n) V.
bool strict_on_wf(const HodgeMorphism& f, const std::vector<std::pair<int, int>>& s,
                  bool conjugate = false);

/// Piecewise version over the splitting: f((+)_{S} A^{p,q}(U)) equals
/// f(U) cap (+)_{S} A^{p,q}(V).
bool strict_on_pieces(const HodgeMorphism& f, const std::vector<std::pair<int, int>>& s,
                      bool conjugate = false);

struct StrictnessReport {
  bool ok = true;
  std::vector<std::string> failures;
};

/// Sweeps singleton index sets over the joint support box (plus the full
/// box) through both equalities and both conjugates.
StrictnessReport check_strictness(const HodgeMorphism& f);

struct SubQuotient {
  MixedHodge object;
  Mat map;  // kernel: inclusion (source.dim x k); cokernel: projection (c x target.dim)
};

/// Kernel and cokernel with induced filtrations; requires a valid morphism
/// of valid mixed Hodge structures.
std::pair<SubQuotient, SubQuotient> kernel_cokernel(const HodgeMorphism& f);

/// Weight/Hodge filtrations of a rank-1 triple: W from bidegree totals,
/// F = t(span of high p), Fbar = t^{-1}(span of high q).
MixedHodge phi1(const PlecticRep& u);

/// Unipotent square root via the binomial series, truncated at the
/// nilpotency order; throws unless s - 1 is nilpotent.  The result is the
/// unique unipotent t with t^2 = s.
Mat sqrt_unipotent(const Mat& s);

struct Psi1Result {
  PlecticRep rep;       // on (+) Gr_n coordinates (blocks by ascending weight)
  GradedWeights dec;
  Mat rho;              // splitting decomposition projection V -> (+) Gr_n
  Mat s;                // rho_bar . rho^{-1}
  Mat equivalence;      // t . rho : V -> phi1(rep), an isomorphism of structures
};

Psi1Result psi1(const MixedHodge& v);

}  // namespace plectic
