#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "plectic/hodge.hpp"

namespace plectic {

/// Object of the multi-filtered category Fil^l_m: one ambient space carrying
/// l ascending and m + m descending filtrations.
struct MultiFiltered {
  int dim = 0;
  std::vector<AscFiltration> w;
  std::vector<DescFiltration> f, fbar;

  int l() const { return static_cast<int>(w.size()); }
  int m() const { return static_cast<int>(f.size()); }
};

/// Subsets of {1,...,g} are sorted vectors of 1-based indices.
std::vector<std::vector<int>> subsets_of(int g);
std::vector<int> complement_subset(const std::vector<int>& I, int g);
bool subset_contains(const std::vector<int>& I, int mu);

/// Guard for the 2^g sweeps; checks iterating over all subsets refuse larger g.
inline constexpr int kMaxSubsetRank = 4;

MultiFiltered from_mixed_hodge(const MixedHodge& v);
MixedHodge as_mixed_hodge(const MultiFiltered& v);  // requires l = m = 1
/// The mu-th one-variable structure (V, W^mu, F_mu, Fbar_mu) of a Fil^g_g object.
MixedHodge mu_structure(const MultiFiltered& v, int mu);

/// Intersection filtration: F_mu^{p_mu} for mu outside I, Fbar_mu^{p_mu} for
/// mu in I.  Requires m() = g and p of length g.
Subspace plectic_filtration(const MultiFiltered& v, const std::vector<int>& I,
                            const std::vector<int>& p);
/// The conjugate family equals the plectic filtration for the complement.
Subspace plectic_filtration_conj(const MultiFiltered& v, const std::vector<int>& I,
                                 const std::vector<int>& p);

/// Trace by total degree: sum over |p| = total of the intersection
/// filtrations (finite by support truncation).
Subspace total_filtration(const MultiFiltered& v, const std::vector<int>& I, int total);
Subspace total_filtration_conj(const MultiFiltered& v, const std::vector<int>& I,
                               int total);

/// The whole total filtration as a descending filtration object.
DescFiltration total_filtration_all(const MultiFiltered& v, const std::vector<int>& I,
                                    bool conjugate);

struct PureWeakFailure {
  std::vector<int> I;
  std::vector<int> p;      // the probe exponent (empty for global failures)
  std::string what;
};

struct PureWeakReport {
  bool ok = true;
  std::vector<PureWeakFailure> failures;
};

/// Conditions of a pure weak structure of weight n on a Fil^0_g object
/// (w empty): for every subset the intersection filtrations decompose into
/// the bigraded pieces of total weight n, pieces of larger total vanish, and
/// the pieces exhaust the space.
PureWeakReport check_pure_weak(const MultiFiltered& v, int n);

struct WeakConditionFailure {
  char condition;  // 'a', 'b' or 'c'
  std::vector<int> I;
  int weight = 0;
  std::vector<int> p, q;
  int lhs_dim = -1, rhs_dim = -1;
  std::string what;
};

struct WeakVerdict {
  std::vector<int> I;
  bool a = true, b = true, c = true;
};

struct WeakReport {
  bool ok = true;
  std::vector<WeakVerdict> verdicts;         // one per subset, lexicographic
  std::vector<WeakConditionFailure> failures;
  std::map<int, bool> graded_pure;           // per weight: graded piece pure weak of that weight

  bool condition_holds(char cond, const std::vector<int>& I) const;
};

/// Runs the three per-subset conditions on a Fil^1_g object:
///  (a) graded intersection filtrations decompose into bigraded pieces,
///  (b) the total filtrations form a mixed Hodge structure,
///  (c) the splitting pieces surject onto the graded bigraded pieces
///      (equivalent to the representative-system inclusion).
/// Also records, per weight, whether the graded piece with the filtrations
/// induced index-by-index is pure weak of that weight.
WeakReport check_weak(const MultiFiltered& v);

/// Raw evaluation of the splitting pieces
///   A_I^{p,q} = (F_I^p cap W_n) cap ((Fbar_I^q cap W_n) + sum_j ...)
/// at the given bidegree, n = |p + q|.
Subspace plectic_splitting_piece(const MultiFiltered& v, const std::vector<int>& I,
                                 const std::vector<int>& p, const std::vector<int>& q);

/// All nonzero splitting pieces; requires check_weak to pass (throws
/// std::invalid_argument otherwise) and verifies they decompose the space.
std::map<BiDegree, Subspace> plectic_splitting(const MultiFiltered& v,
                                               const std::vector<int>& I);

/// Total weight filtration of a Fil^g_g object: W_n = sum over
/// n_1 + ... + n_g = n of the intersections of the partial weight steps.
MultiFiltered total_weight(const MultiFiltered& v);

/// Partial weight filtrations recovered from the splitting pieces of a
/// Fil^1_g object: W^{I,mu}_n = sum of pieces with p_mu + q_mu <= n.
MultiFiltered partial_weights(const MultiFiltered& v, const std::vector<int>& I);

struct PmhsReport {
  bool ok = true;
  int mu = 0;  // 1-based, on failure
  int weight = 0;
  std::vector<int> I, J;
  Subspace lhs, rhs;  // the differing steps
  std::string what;
};

/// Whether the partial weight filtrations are independent of the subset.
PmhsReport check_pmhs(const MultiFiltered& v);

/// Cached analysis of one Fil^1_g object: the report, the per-subset
/// splittings and the derived filtrations share one intersection engine.
/// The free functions above are thin wrappers; use this handle when asking
/// several questions about the same object.
class WeakAnalysis {
 public:
  explicit WeakAnalysis(MultiFiltered v);

  const MultiFiltered& object() const;
  const WeakReport& report();
  /// Nonzero splitting pieces for I; throws unless the report is clean.
  const std::map<BiDegree, Subspace>& splitting(const std::vector<int>& I);
  MultiFiltered partial_weights(const std::vector<int>& I);
  PmhsReport pmhs();

 private:
  struct Impl;
  std::shared_ptr<Impl> impl_;
};

struct OrthFailure {
  int mu = 0, nu = 0;   // 1-based; nu = 0 for the mu-th structure itself
  std::string step;     // which filtration step was restricted
  std::vector<int> weights;
  std::string what;
};

struct OrthReport {
  bool ok = true;
  std::vector<OrthFailure> failures;
};

/// Orthogonal-family conditions on a Fil^g_g object: every one-variable
/// structure is mixed Hodge, and every filtration step of one index carries
/// mixed Hodge structures for all other indices.
OrthReport validate_orth(const MultiFiltered& v);

/// One-variable splitting of the mu-th structure of a Fil^g_g object, with
/// the roles of F and Fbar exchanged when mu lies in I.
std::map<std::pair<int, int>, Subspace> partial_splitting(const MultiFiltered& v,
                                                          const std::vector<int>& I,
                                                          int mu);

/// Left-hand side graded filtration (W_n cap F_I^p) / (W_{n-1} cap F_I^p) as
/// a subspace of the graded block; gr carries the quotient data of w[0].
Subspace graded_plectic_filtration(const MultiFiltered& v, const GradedWeights& gr,
                                   const std::vector<int>& I, const std::vector<int>& p,
                                   int n);

/// Right-hand side of the comparison: intersection of the index-by-index
/// induced filtrations on the graded block.
Subspace graded_induced_intersection(const MultiFiltered& v, const GradedWeights& gr,
                                     const std::vector<int>& I, const std::vector<int>& p,
                                     int n);

/// Graded piece Gr_n with the per-index induced filtrations, as a Fil^0_g
/// object on the block coordinates.
MultiFiltered graded_piece_object(const MultiFiltered& v, const GradedWeights& gr, int n);

/// Tensor product and internal hom of Fil^1_g quadruples (convolution
/// weight/Hodge filtrations and their hom-space adjoints).
MultiFiltered tensor_filtered(const MultiFiltered& u, const MultiFiltered& v);
MultiFiltered hom_filtered(const MultiFiltered& u, const MultiFiltered& v);

/// Span of pairwise Kronecker products.
Subspace subspace_tensor(const Subspace& a, const Subspace& b);

}  // namespace plectic
