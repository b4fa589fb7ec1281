#include "plectic/weak.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace plectic {

namespace {

constexpr long long kNegInf = LLONG_MIN / 4;
constexpr long long kPosInf = LLONG_MAX / 4;

std::string index_string(const std::vector<int>& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t k = 0; k < v.size(); ++k) os << (k ? "," : "") << v[k];
  os << ")";
  return os.str();
}

// Class structure of a descending filtration: maximal intervals of constant
// value.  Class i < jump count covers (J[i-1], J[i]] with value at(J[i]);
// the final class is the zero zone above the support.
struct DescClasses {
  std::vector<int> jumps;
  std::vector<Subspace> values;  // per non-zero class
  int ambient = 0;

  void init(const DescFiltration& f) {
    ambient = f.ambient();
    jumps = f.jumps();
    for (int j : jumps) values.push_back(f.at(j));
  }
  int classes() const { return static_cast<int>(jumps.size()); }  // non-zero ones
  int class_of(long long e) const {
    auto it = std::lower_bound(jumps.begin(), jumps.end(), e);
    return static_cast<int>(it - jumps.begin());  // == classes() in the zero zone
  }
  long long lo(int c) const { return c == 0 ? kNegInf : jumps[c - 1] + 1; }
  long long hi(int c) const { return jumps[c]; }
  const Subspace& value(int c) const { return values[c]; }
};

struct AscClasses {
  std::vector<int> jumps;
  std::vector<Subspace> values;
  int ambient = 0;

  void init(const AscFiltration& f) {
    ambient = f.ambient();
    jumps = f.jumps();
    for (int j : jumps) values.push_back(f.at(j));
  }
  // Class c in 0..jumps: c = 0 is the zero zone below the support; class
  // c >= 1 covers [J[c-1], J[c] - 1] (the last one unbounded above).
  int class_of(long long n) const {
    auto it = std::upper_bound(jumps.begin(), jumps.end(), n);
    return static_cast<int>(it - jumps.begin());
  }
  Subspace value(int c, int ambient_dim) const {
    return c == 0 ? Subspace::zero(ambient_dim) : values[c - 1];
  }
};

// Number of lattice points with coordinate sum m in a product of integer
// intervals (lower ends may be unbounded), capped at 2; the unique point is
// reported when the count is 1.
struct HyperplaneCount {
  int count = 0;  // 0, 1, or 2 meaning ">= 2"
  std::vector<long long> point;
};

HyperplaneCount count_on_hyperplane(const std::vector<long long>& lo,
                                    const std::vector<long long>& hi, long long m) {
  std::size_t d = lo.size();
  HyperplaneCount out;
  if (d == 0) {
    out.count = (m == 0) ? 1 : 0;
    return out;
  }
  long long hi_sum = 0;
  for (long long h : hi) {
    if (h >= kPosInf) throw std::logic_error("unbounded upper class in hyperplane count");
    hi_sum += h;
  }
  // Effective finite lower bounds: no coordinate can sit below m minus the
  // other upper ends.
  std::vector<long long> a(d);
  long long a_sum = 0;
  for (std::size_t i = 0; i < d; ++i) {
    a[i] = std::max(lo[i], m - (hi_sum - hi[i]));
    if (a[i] > hi[i]) return out;  // empty
    a_sum += a[i];
  }
  if (a_sum > m) return out;
  // Lexicographically maximal solution.
  std::vector<long long> x(d);
  long long rest = m;
  long long tail_min = a_sum;
  for (std::size_t i = 0; i < d; ++i) {
    tail_min -= a[i];
    x[i] = std::min(hi[i], rest - tail_min);
    if (x[i] < a[i]) return out;
    rest -= x[i];
  }
  if (rest != 0) return out;
  out.count = 1;
  out.point = x;
  // Another solution exists iff some coordinate can trade a unit with another.
  for (std::size_t i = 0; i < d && out.count == 1; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      if (i == j) continue;
      if (x[i] > a[i] && x[j] < hi[j]) {
        out.count = 2;
        break;
      }
    }
  return out;
}

// Cached intersection engine for one Fil^l_g object.
class Engine {
 public:
  explicit Engine(const MultiFiltered& v) : v_(v), g_(v.m()) {
    fc_.resize(g_);
    fbc_.resize(g_);
    for (int mu = 0; mu < g_; ++mu) {
      fc_[mu].init(v.f[mu]);
      fbc_[mu].init(v.fbar[mu]);
    }
    if (v.l() == 1) {
      wc_.init(v.w[0]);
      gw_ = graded_weights(v.dim, v.w[0]);
    }
  }

  int g() const { return g_; }
  int dim() const { return v_.dim; }
  const GradedWeights& gw() const { return gw_; }
  const AscClasses& wc() const { return wc_; }
  const DescClasses& classes(int mu, int role) const {
    return role ? fbc_[mu] : fc_[mu];
  }

  // roles[mu] selects F (0) or Fbar (1); cls[mu] is a non-zero class id.
  const Subspace& atom(const std::vector<int>& roles, const std::vector<int>& cls) {
    std::vector<int> key{0};
    pack(key, roles, cls);
    auto it = atoms_.find(key);
    if (it != atoms_.end()) return it->second;
    Subspace acc = Subspace::full(v_.dim);
    for (int mu = 0; mu < g_ && !acc.is_zero(); ++mu)
      acc = intersect(acc, classes(mu, roles[mu]).value(cls[mu]));
    return atoms_.emplace(std::move(key), std::move(acc)).first->second;
  }

  const Subspace& atom_w(const std::vector<int>& roles, const std::vector<int>& cls,
                         int wlevel) {
    int wcls = wc_.class_of(wlevel);
    std::vector<int> key{1, wcls};
    pack(key, roles, cls);
    auto it = atoms_.find(key);
    if (it != atoms_.end()) return it->second;
    Subspace acc = wc_.value(wcls, v_.dim);
    if (!acc.is_zero()) acc = intersect(acc, atom(roles, cls));
    return atoms_.emplace(std::move(key), std::move(acc)).first->second;
  }

  // Q_n(W_n cap atom) inside the graded block at weight n (must be a jump).
  const Subspace& graded_atom(int n, const std::vector<int>& roles,
                              const std::vector<int>& cls) {
    int block = gw_.block_index(n);
    if (block < 0) throw std::logic_error("graded_atom at a weight with zero block");
    std::vector<int> key{2, n};
    pack(key, roles, cls);
    auto it = atoms_.find(key);
    if (it != atoms_.end()) return it->second;
    Subspace cut = atom_w(roles, cls, n);
    Subspace img = cut.image_under(gw_.blocks[block].projection);
    return atoms_.emplace(std::move(key), std::move(img)).first->second;
  }

  const Subspace& graded_pair(int n, const std::vector<int>& roles_a,
                              const std::vector<int>& cls_a,
                              const std::vector<int>& roles_b,
                              const std::vector<int>& cls_b) {
    std::vector<int> key{3, n};
    pack(key, roles_a, cls_a);
    pack(key, roles_b, cls_b);
    auto it = atoms_.find(key);
    if (it != atoms_.end()) return it->second;
    Subspace value = intersect(graded_atom(n, roles_a, cls_a),
                               graded_atom(n, roles_b, cls_b));
    return atoms_.emplace(std::move(key), std::move(value)).first->second;
  }

  // The splitting piece at explicit exponents; n = |p + q|.
  Subspace splitting_piece(const std::vector<int>& roles, const std::vector<int>& p,
                           const std::vector<int>& q) {
    long long n = 0;
    for (int mu = 0; mu < g_; ++mu) n += p[mu] + static_cast<long long>(q[mu]);
    std::vector<int> roles_c = flip(roles);
    std::vector<int> cls_p(g_), cls_q(g_);
    for (int mu = 0; mu < g_; ++mu) {
      cls_p[mu] = classes(mu, roles[mu]).class_of(p[mu]);
      if (cls_p[mu] >= classes(mu, roles[mu]).classes()) return Subspace::zero(v_.dim);
      cls_q[mu] = classes(mu, roles_c[mu]).class_of(q[mu]);
      if (cls_q[mu] >= classes(mu, roles_c[mu]).classes()) return Subspace::zero(v_.dim);
    }
    const Subspace& left = atom_w(roles, cls_p, static_cast<int>(n));
    if (left.is_zero()) return left;
    RrefBuilder right(v_.dim);
    for (const Vec& r : atom_w(roles_c, cls_q, static_cast<int>(n)).basis())
      right.absorb(r);
    // The shifted terms, one maximal representative per class combination.
    int wlo = wc_.jumps.empty() ? 0 : wc_.jumps.front();
    std::vector<int> ycls(g_);
    sweep_classes(roles_c, [&](const std::vector<int>& yc) {
      long long offset = 0;
      for (int mu = 0; mu < g_; ++mu) {
        const DescClasses& dc = classes(mu, roles_c[mu]);
        if (dc.lo(yc[mu]) > q[mu]) return;  // class has no points below q
        offset += std::max<long long>(0, q[mu] - dc.hi(yc[mu]));
      }
      long long level = n - 1 - offset;
      if (level < wlo) return;
      for (const Vec& r : atom_w(roles_c, yc, static_cast<int>(level)).basis())
        right.absorb(r);
    });
    return intersect(left, right.take());
  }

  // Enumerate class id vectors over the non-zero classes for given roles.
  template <typename Fn>
  void sweep_classes(const std::vector<int>& roles, Fn&& fn) {
    std::vector<int> cls(g_, 0);
    sweep_rec(roles, cls, 0, fn);
  }

  std::vector<int> flip(const std::vector<int>& roles) const {
    std::vector<int> out(g_);
    for (int mu = 0; mu < g_; ++mu) out[mu] = 1 - roles[mu];
    return out;
  }

 private:
  template <typename Fn>
  void sweep_rec(const std::vector<int>& roles, std::vector<int>& cls, int mu, Fn&& fn) {
    if (mu == g_) {
      fn(const_cast<const std::vector<int>&>(cls));
      return;
    }
    int count = classes(mu, roles[mu]).classes();
    for (int c = 0; c < count; ++c) {
      cls[mu] = c;
      sweep_rec(roles, cls, mu + 1, fn);
    }
  }

  static void pack(std::vector<int>& key, const std::vector<int>& roles,
                   const std::vector<int>& cls) {
    for (std::size_t k = 0; k < roles.size(); ++k) {
      key.push_back(roles[k]);
      key.push_back(cls[k]);
    }
  }

  const MultiFiltered& v_;
  int g_;
  std::vector<DescClasses> fc_, fbc_;
  AscClasses wc_;
  GradedWeights gw_;
  std::map<std::vector<int>, Subspace> atoms_;
};

std::vector<int> roles_for(const std::vector<int>& I, int g) {
  std::vector<int> roles(g, 0);
  for (int mu : I) {
    if (mu < 1 || mu > g) throw std::invalid_argument("subset index out of range");
    roles[mu - 1] = 1;
  }
  return roles;
}

// A bigraded family member: the unique lattice point carrying a nonzero piece.
struct FamilyPiece {
  std::vector<long long> r, s;
  Subspace value;
};

// Enumerates the nonzero pieces of total weight n for the given role split,
// reporting index multiplicity (which breaks directness) via `repeated`.
// graded < 0 means work on the ambient space (pure weak case); otherwise the
// pieces live in the graded block at weight n.
std::vector<FamilyPiece> family_pieces(Engine& e, const std::vector<int>& roles, int n,
                                       bool graded, bool& repeated,
                                       std::vector<std::string>* notes) {
  std::vector<FamilyPiece> out;
  repeated = false;
  std::vector<int> roles_c = e.flip(roles);
  int g = e.g();
  e.sweep_classes(roles, [&](const std::vector<int>& cls_r) {
    std::vector<int> cr = cls_r;
    e.sweep_classes(roles_c, [&](const std::vector<int>& cls_s) {
      std::vector<long long> lo(2 * g), hi(2 * g);
      for (int mu = 0; mu < g; ++mu) {
        const DescClasses& dr = e.classes(mu, roles[mu]);
        const DescClasses& ds = e.classes(mu, roles_c[mu]);
        lo[mu] = dr.lo(cr[mu]);
        hi[mu] = dr.hi(cr[mu]);
        lo[g + mu] = ds.lo(cls_s[mu]);
        hi[g + mu] = ds.hi(cls_s[mu]);
      }
      HyperplaneCount hc = count_on_hyperplane(lo, hi, n);
      if (hc.count == 0) return;
      const Subspace& value = graded ? e.graded_pair(n, roles, cr, roles_c, cls_s)
                                     : intersect(e.atom(roles, cr), e.atom(roles_c, cls_s));
      if (value.is_zero()) return;
      if (hc.count >= 2) {
        repeated = true;
        if (notes)
          notes->push_back("a nonzero bigraded piece repeats along the weight-" +
                           std::to_string(n) + " hyperplane");
        return;
      }
      FamilyPiece piece;
      piece.r.assign(hc.point.begin(), hc.point.begin() + g);
      piece.s.assign(hc.point.begin() + g, hc.point.end());
      piece.value = value;
      out.push_back(std::move(piece));
    });
  });
  return out;
}

// Candidate probe exponents for the "for all p" decomposition queries.
// Both sides are constant between breakpoints: the filtration value changes
// when p enters a new class (at jump + 1) and the piece family changes when
// p passes a piece coordinate (at r + 1); one sentinel below everything
// covers the stable tail.
std::vector<std::vector<int>> probe_grid(Engine& e, const std::vector<int>& roles,
                                         const std::vector<FamilyPiece>& pieces) {
  int g = e.g();
  std::vector<std::vector<int>> per(g);
  for (int mu = 0; mu < g; ++mu) {
    std::set<int> cands;
    const DescClasses& dc = e.classes(mu, roles[mu]);
    for (int j : dc.jumps) cands.insert(j + 1);
    for (const FamilyPiece& piece : pieces)
      cands.insert(static_cast<int>(piece.r[mu]) + 1);
    if (cands.empty()) cands.insert(0);
    cands.insert(*cands.begin() - 1);
    per[mu].assign(cands.begin(), cands.end());
  }
  return per;
}

template <typename Fn>
void product_sweep(const std::vector<std::vector<int>>& per, std::vector<int>& probe,
                   std::size_t mu, Fn&& fn) {
  if (mu == per.size()) {
    fn(const_cast<const std::vector<int>&>(probe));
    return;
  }
  for (int v : per[mu]) {
    probe[mu] = v;
    product_sweep(per, probe, mu + 1, fn);
  }
}

// Checks F^p = (+) of pieces with r >= p over the probe grid.  `lhs_of`
// evaluates the filtration at a probe.
template <typename LhsFn>
bool decomposition_queries(Engine& e, const std::vector<int>& roles,
                           const std::vector<FamilyPiece>& pieces, int ambient,
                           LhsFn&& lhs_of, std::vector<int>* bad_probe,
                           int* lhs_dim, int* rhs_dim) {
  std::vector<std::vector<int>> per = probe_grid(e, roles, pieces);
  std::map<std::vector<char>, Subspace> span_memo;
  std::vector<int> probe(e.g());
  bool ok = true;
  product_sweep(per, probe, 0, [&](const std::vector<int>& p) {
    if (!ok) return;
    std::vector<char> mask(pieces.size(), 0);
    for (std::size_t k = 0; k < pieces.size(); ++k) {
      bool ge = true;
      for (int mu = 0; mu < e.g(); ++mu)
        if (pieces[k].r[mu] < p[mu]) {
          ge = false;
          break;
        }
      mask[k] = ge ? 1 : 0;
    }
    auto it = span_memo.find(mask);
    if (it == span_memo.end()) {
      RrefBuilder acc(ambient);
      for (std::size_t k = 0; k < pieces.size(); ++k)
        if (mask[k])
          for (const Vec& r : pieces[k].value.basis()) acc.absorb(r);
      it = span_memo.emplace(std::move(mask), acc.take()).first;
    }
    Subspace lhs = lhs_of(p);
    if (lhs != it->second) {
      ok = false;
      if (bad_probe) *bad_probe = p;
      if (lhs_dim) *lhs_dim = lhs.dim();
      if (rhs_dim) *rhs_dim = it->second.dim();
    }
  });
  return ok;
}

bool pieces_direct(const std::vector<FamilyPiece>& pieces, int ambient, int* rank_out) {
  RrefBuilder acc(ambient);
  int total = 0;
  bool ok = true;
  for (const FamilyPiece& piece : pieces) {
    total += piece.value.dim();
    for (const Vec& r : piece.value.basis())
      if (!acc.absorb(r)) ok = false;
  }
  if (rank_out) *rank_out = acc.rank();
  return ok && acc.rank() == total;
}

std::vector<int> to_int_vec(const std::vector<long long>& v) {
  return std::vector<int>(v.begin(), v.end());
}

}  // namespace

std::vector<std::vector<int>> subsets_of(int g) {
  if (g > kMaxSubsetRank)
    throw std::invalid_argument("subset sweep capped at rank " +
                                std::to_string(kMaxSubsetRank));
  std::vector<std::vector<int>> out;
  for (int mask = 0; mask < (1 << g); ++mask) {
    std::vector<int> I;
    for (int mu = 0; mu < g; ++mu)
      if (mask & (1 << mu)) I.push_back(mu + 1);
    out.push_back(std::move(I));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> complement_subset(const std::vector<int>& I, int g) {
  std::vector<int> out;
  for (int mu = 1; mu <= g; ++mu)
    if (!subset_contains(I, mu)) out.push_back(mu);
  return out;
}

bool subset_contains(const std::vector<int>& I, int mu) {
  return std::find(I.begin(), I.end(), mu) != I.end();
}

MultiFiltered from_mixed_hodge(const MixedHodge& v) {
  MultiFiltered out;
  out.dim = v.dim;
  out.w = {v.w};
  out.f = {v.f};
  out.fbar = {v.fbar};
  return out;
}

MixedHodge as_mixed_hodge(const MultiFiltered& v) {
  if (v.l() != 1 || v.m() != 1)
    throw std::invalid_argument("as_mixed_hodge requires one filtration of each kind");
  return MixedHodge{v.dim, v.w[0], v.f[0], v.fbar[0]};
}

MixedHodge mu_structure(const MultiFiltered& v, int mu) {
  if (mu < 1 || mu > v.m() || v.l() != v.m())
    throw std::invalid_argument("mu_structure index out of range");
  return MixedHodge{v.dim, v.w[mu - 1], v.f[mu - 1], v.fbar[mu - 1]};
}

Subspace plectic_filtration(const MultiFiltered& v, const std::vector<int>& I,
                            const std::vector<int>& p) {
  int g = v.m();
  if (static_cast<int>(p.size()) != g)
    throw std::invalid_argument("exponent vector length does not match g");
  Subspace acc = Subspace::full(v.dim);
  for (int mu = 1; mu <= g && !acc.is_zero(); ++mu) {
    const DescFiltration& f = subset_contains(I, mu) ? v.fbar[mu - 1] : v.f[mu - 1];
    acc = intersect(acc, f.at(p[mu - 1]));
  }
  return acc;
}

Subspace plectic_filtration_conj(const MultiFiltered& v, const std::vector<int>& I,
                                 const std::vector<int>& p) {
  return plectic_filtration(v, complement_subset(I, v.m()), p);
}

namespace {

// Shared truncation box for the total-degree traces: per coordinate
// [lo - 1 - E, hi] around the jump range, where E bounds the redistribution
// excess; totals outside come out full/zero by monotonicity.
Subspace total_filtration_impl(const MultiFiltered& v, const std::vector<int>& I,
                               int total, bool conjugate) {
  int g = v.m();
  std::vector<std::pair<int, int>> range(g);
  long long excess = 0;
  for (int mu = 1; mu <= g; ++mu) {
    bool in_i = subset_contains(I, mu);
    const DescFiltration& f = (in_i != conjugate) ? v.fbar[mu - 1] : v.f[mu - 1];
    auto [lo, hi] = f.support();
    range[mu - 1] = {lo, hi};
    excess += hi - lo + 1;
  }
  long long lo_sum = 0, hi_sum = 0;
  for (auto [lo, hi] : range) {
    lo_sum += lo;
    hi_sum += hi;
  }
  if (total <= lo_sum - 1) return Subspace::full(v.dim);
  if (total > hi_sum) return Subspace::zero(v.dim);

  std::vector<int> I_eff = conjugate ? complement_subset(I, g) : I;
  RrefBuilder acc(v.dim);
  std::vector<int> p(g);
  // Enumerate exponent vectors in the truncated box with the required total.
  auto rec = [&](auto&& self, int mu, long long rest) -> void {
    if (mu == g) {
      if (rest == 0) {
        Subspace term = plectic_filtration(v, I_eff, p);
        for (const Vec& r : term.basis()) acc.absorb(r);
      }
      return;
    }
    long long lo = range[mu].first - 1 - excess, hi = range[mu].second;
    for (long long e = lo; e <= hi; ++e) {
      p[mu] = static_cast<int>(e);
      long long remaining = rest - e;
      // Remaining coordinates can still reach the target?
      long long min_rest = 0, max_rest = 0;
      for (int nu = mu + 1; nu < g; ++nu) {
        min_rest += range[nu].first - 1 - excess;
        max_rest += range[nu].second;
      }
      if (remaining < min_rest || remaining > max_rest) continue;
      self(self, mu + 1, remaining);
    }
  };
  rec(rec, 0, total);
  return acc.take();
}

}  // namespace

Subspace total_filtration(const MultiFiltered& v, const std::vector<int>& I, int total) {
  return total_filtration_impl(v, I, total, false);
}

Subspace total_filtration_conj(const MultiFiltered& v, const std::vector<int>& I,
                               int total) {
  return total_filtration_impl(v, I, total, true);
}

DescFiltration total_filtration_all(const MultiFiltered& v, const std::vector<int>& I,
                                    bool conjugate) {
  int g = v.m();
  long long lo_sum = 0, hi_sum = 0;
  for (int mu = 1; mu <= g; ++mu) {
    bool in_i = subset_contains(I, mu);
    const DescFiltration& f = (in_i != conjugate) ? v.fbar[mu - 1] : v.f[mu - 1];
    auto [lo, hi] = f.support();
    lo_sum += lo;
    hi_sum += hi;
  }
  DescFiltration out(v.dim);
  for (long long p = lo_sum - 1; p <= hi_sum; ++p)
    out.set_step(static_cast<int>(p),
                 total_filtration_impl(v, I, static_cast<int>(p), conjugate));
  if (v.dim > 0 && out.steps().empty()) out.set_step(0, Subspace::full(v.dim));
  out.normalize();
  return out;
}

PureWeakReport check_pure_weak(const MultiFiltered& v, int n) {
  if (v.l() != 0)
    throw std::invalid_argument("check_pure_weak expects no weight filtration");
  PureWeakReport rep;
  int g = v.m();
  Engine e(v);
  for (const std::vector<int>& I : subsets_of(g)) {
    std::vector<int> roles = roles_for(I, g);
    std::vector<std::string> notes;
    bool repeated = false;
    std::vector<FamilyPiece> pieces = family_pieces(e, roles, n, false, repeated, &notes);
    if (repeated) {
      rep.ok = false;
      rep.failures.push_back({I, {}, notes.empty() ? "piece repetition" : notes.front()});
      continue;
    }
    if (!pieces_direct(pieces, v.dim, nullptr)) {
      rep.ok = false;
      rep.failures.push_back({I, {}, "bigraded pieces are not in direct sum"});
      continue;
    }
    // Pieces of larger total weight must vanish.
    std::vector<int> roles_c = e.flip(roles);
    bool fudge_ok = true;
    e.sweep_classes(roles, [&](const std::vector<int>& cr) {
      if (!fudge_ok) return;
      std::vector<int> cr_copy = cr;
      e.sweep_classes(roles_c, [&](const std::vector<int>& cs) {
        if (!fudge_ok) return;
        long long max_total = 0;
        for (int mu = 0; mu < g; ++mu)
          max_total += e.classes(mu, roles[mu]).hi(cr_copy[mu]) +
                       e.classes(mu, roles_c[mu]).hi(cs[mu]);
        if (max_total <= n) return;
        Subspace value =
            intersect(e.atom(roles, cr_copy), e.atom(roles_c, cs));
        if (!value.is_zero()) fudge_ok = false;
      });
    });
    if (!fudge_ok) {
      rep.ok = false;
      rep.failures.push_back({I, {}, "nonzero piece above the stated weight"});
    }
    std::vector<int> bad;
    int lhs_dim = -1, rhs_dim = -1;
    bool queries_ok = decomposition_queries(
        e, roles, pieces, v.dim,
        [&](const std::vector<int>& p) {
          std::vector<int> cls(g);
          for (int mu = 0; mu < g; ++mu) {
            cls[mu] = e.classes(mu, roles[mu]).class_of(p[mu]);
            if (cls[mu] >= e.classes(mu, roles[mu]).classes())
              return Subspace::zero(v.dim);
          }
          return e.atom(roles, cls);
        },
        &bad, &lhs_dim, &rhs_dim);
    if (!queries_ok) {
      rep.ok = false;
      std::ostringstream os;
      os << "decomposition fails at p=" << index_string(bad) << " (filtration dim "
         << lhs_dim << ", pieces dim " << rhs_dim << ")";
      rep.failures.push_back({I, bad, os.str()});
    }
  }
  return rep;
}

bool WeakReport::condition_holds(char cond, const std::vector<int>& I) const {
  for (const WeakVerdict& v : verdicts)
    if (v.I == I) return cond == 'a' ? v.a : (cond == 'b' ? v.b : v.c);
  return false;
}

namespace {

WeakReport compute_weak_report(const MultiFiltered& v, Engine& e) {
  WeakReport rep;
  int g = v.m();
  const GradedWeights& gw = e.gw();

  for (const std::vector<int>& I : subsets_of(g)) {
    WeakVerdict verdict;
    verdict.I = I;
    std::vector<int> roles = roles_for(I, g);
    std::vector<int> roles_c = e.flip(roles);

    // (b): the total filtrations form a mixed Hodge structure.
    MixedHodge total{v.dim, v.w[0], total_filtration_all(v, I, false),
                     total_filtration_all(v, I, true)};
    MhsReport mhs = validate_mhs(total);
    if (!mhs.ok) {
      verdict.b = false;
      rep.ok = false;
      for (int n : mhs.failing_weights)
        rep.failures.push_back({'b', I, n, {}, {}, -1, -1,
                                "total filtrations are not mixed Hodge at weight " +
                                    std::to_string(n)});
      if (mhs.failing_weights.empty())
        rep.failures.push_back({'b', I, 0, {}, {}, -1, -1, "malformed filtrations"});
    }

    for (std::size_t k = 0; k < gw.weights.size(); ++k) {
      int n = gw.weights[k];
      int block_dim = gw.block_dim(static_cast<int>(k));
      std::vector<std::string> notes;
      bool repeated = false;
      std::vector<FamilyPiece> pieces = family_pieces(e, roles, n, true, repeated, &notes);
      if (repeated || !pieces_direct(pieces, block_dim, nullptr)) {
        verdict.a = false;
        rep.ok = false;
        rep.failures.push_back({'a', I, n, {}, {}, -1, -1,
                                repeated ? notes.front()
                                         : "graded pieces are not in direct sum"});
        continue;
      }
      std::vector<int> bad;
      int lhs_dim = -1, rhs_dim = -1;
      bool queries_ok = decomposition_queries(
          e, roles, pieces, block_dim,
          [&](const std::vector<int>& p) {
            std::vector<int> cls(g);
            for (int mu = 0; mu < g; ++mu) {
              cls[mu] = e.classes(mu, roles[mu]).class_of(p[mu]);
              if (cls[mu] >= e.classes(mu, roles[mu]).classes())
                return Subspace::zero(block_dim);
            }
            return e.graded_atom(n, roles, cls);
          },
          &bad, &lhs_dim, &rhs_dim);
      if (!queries_ok) {
        verdict.a = false;
        rep.ok = false;
        std::ostringstream os;
        os << "graded decomposition fails at p=" << index_string(bad);
        rep.failures.push_back({'a', I, n, bad, {}, lhs_dim, rhs_dim, os.str()});
      }

      // (c): the splitting pieces must surject onto the graded pieces.
      for (const FamilyPiece& piece : pieces) {
        std::vector<int> pi = to_int_vec(piece.r), qi = to_int_vec(piece.s);
        Subspace a = e.splitting_piece(roles, pi, qi);
        Subspace rho_image = a.image_under(gw.blocks[k].projection);
        if (rho_image.dim() != piece.value.dim() ||
            !piece.value.contains(rho_image)) {
          verdict.c = false;
          rep.ok = false;
          std::ostringstream os;
          os << "splitting piece does not fill the graded piece at p="
             << index_string(pi) << ", q=" << index_string(qi);
          rep.failures.push_back(
              {'c', I, n, pi, qi, rho_image.dim(), piece.value.dim(), os.str()});
        }
      }
    }
    rep.verdicts.push_back(std::move(verdict));
  }

  // Per-weight pure-weak verdicts of the graded pieces with the filtrations
  // induced index by index.
  for (std::size_t k = 0; k < gw.weights.size(); ++k) {
    int n = gw.weights[k];
    MultiFiltered piece = graded_piece_object(v, gw, n);
    rep.graded_pure[n] = check_pure_weak(piece, n).ok;
  }
  return rep;
}

std::map<BiDegree, Subspace> compute_splitting(const MultiFiltered& v, Engine& e,
                                               const std::vector<int>& I) {
  const GradedWeights& gw = e.gw();
  std::vector<int> roles = roles_for(I, v.m());
  std::map<BiDegree, Subspace> out;
  RrefBuilder all(v.dim);
  int total = 0;
  for (int n : gw.weights) {
    bool repeated = false;
    std::vector<FamilyPiece> pieces = family_pieces(e, roles, n, true, repeated, nullptr);
    for (const FamilyPiece& piece : pieces) {
      std::vector<int> pi = to_int_vec(piece.r), qi = to_int_vec(piece.s);
      Subspace a = e.splitting_piece(roles, pi, qi);
      if (a.is_zero()) continue;
      total += a.dim();
      for (const Vec& r : a.basis())
        if (!all.absorb(r))
          throw std::logic_error("splitting pieces are not independent");
      out.emplace(BiDegree{pi, qi}, std::move(a));
    }
  }
  if (total != v.dim) throw std::logic_error("splitting pieces do not exhaust the space");
  return out;
}

}  // namespace

struct WeakAnalysis::Impl {
  MultiFiltered v;
  Engine engine;
  std::optional<WeakReport> report;
  std::map<std::vector<int>, std::map<BiDegree, Subspace>> splittings;

  explicit Impl(MultiFiltered obj) : v(std::move(obj)), engine(v) {
    if (v.l() != 1)
      throw std::invalid_argument("the analysis expects exactly one weight filtration");
  }
};

WeakAnalysis::WeakAnalysis(MultiFiltered v)
    : impl_(std::make_shared<Impl>(std::move(v))) {}

const MultiFiltered& WeakAnalysis::object() const { return impl_->v; }

const WeakReport& WeakAnalysis::report() {
  if (!impl_->report) impl_->report = compute_weak_report(impl_->v, impl_->engine);
  return *impl_->report;
}

const std::map<BiDegree, Subspace>& WeakAnalysis::splitting(const std::vector<int>& I) {
  if (!report().ok)
    throw std::invalid_argument("plectic_splitting requires the weak conditions");
  auto it = impl_->splittings.find(I);
  if (it == impl_->splittings.end())
    it = impl_->splittings.emplace(I, compute_splitting(impl_->v, impl_->engine, I)).first;
  return it->second;
}

MultiFiltered WeakAnalysis::partial_weights(const std::vector<int>& I) {
  const std::map<BiDegree, Subspace>& pieces = splitting(I);
  const MultiFiltered& v = impl_->v;
  int g = v.m();
  MultiFiltered out;
  out.dim = v.dim;
  out.f = v.f;
  out.fbar = v.fbar;
  for (int mu = 0; mu < g; ++mu) {
    std::set<int> totals;
    for (const auto& [deg, piece] : pieces) totals.insert(deg.p[mu] + deg.q[mu]);
    AscFiltration w(v.dim);
    for (int n : totals) {
      RrefBuilder acc(v.dim);
      for (const auto& [deg, piece] : pieces)
        if (deg.p[mu] + deg.q[mu] <= n)
          for (const Vec& r : piece.basis()) acc.absorb(r);
      w.set_step(n, acc.take());
    }
    if (totals.empty()) w.set_step(0, Subspace::full(v.dim));
    w.normalize();
    out.w.push_back(std::move(w));
  }
  return out;
}

PmhsReport WeakAnalysis::pmhs() {
  PmhsReport rep;
  const MultiFiltered& v = impl_->v;
  int g = v.m();
  std::vector<std::vector<int>> subsets = subsets_of(g);
  std::vector<MultiFiltered> partials;
  partials.reserve(subsets.size());
  for (const std::vector<int>& I : subsets) partials.push_back(partial_weights(I));
  for (std::size_t k = 1; k < subsets.size(); ++k)
    for (int mu = 0; mu < g; ++mu) {
      if (partials[0].w[mu] == partials[k].w[mu]) continue;
      rep.ok = false;
      rep.mu = mu + 1;
      rep.I = subsets[0];
      rep.J = subsets[k];
      std::set<int> levels;
      for (int j : partials[0].w[mu].jumps()) levels.insert(j);
      for (int j : partials[k].w[mu].jumps()) levels.insert(j);
      for (int n : levels) {
        if (partials[0].w[mu].at(n) != partials[k].w[mu].at(n)) {
          rep.weight = n;
          rep.lhs = partials[0].w[mu].at(n);
          rep.rhs = partials[k].w[mu].at(n);
          break;
        }
      }
      std::ostringstream os;
      os << "partial weight filtrations differ at mu=" << rep.mu
         << ", n=" << rep.weight << " between I=" << index_string(rep.I)
         << " and J=" << index_string(rep.J);
      rep.what = os.str();
      return rep;
    }
  return rep;
}

WeakReport check_weak(const MultiFiltered& v) { return WeakAnalysis(v).report(); }

Subspace plectic_splitting_piece(const MultiFiltered& v, const std::vector<int>& I,
                                 const std::vector<int>& p, const std::vector<int>& q) {
  Engine e(v);
  return e.splitting_piece(roles_for(I, v.m()), p, q);
}

std::map<BiDegree, Subspace> plectic_splitting(const MultiFiltered& v,
                                               const std::vector<int>& I) {
  return WeakAnalysis(v).splitting(I);
}

MultiFiltered total_weight(const MultiFiltered& v) {
  int g = v.l();
  if (g != v.m()) throw std::invalid_argument("total_weight expects l = m");
  MultiFiltered out;
  out.dim = v.dim;
  out.f = v.f;
  out.fbar = v.fbar;
  AscFiltration w(v.dim);
  if (g == 0) {
    w.set_step(0, Subspace::full(v.dim));
    out.w = {w};
    return out;
  }
  std::vector<std::vector<int>> jumps(g);
  long long lo_sum = 0, hi_sum = 0, excess = 0;
  for (int mu = 0; mu < g; ++mu) {
    jumps[mu] = v.w[mu].jumps();
    if (jumps[mu].empty()) {
      // zero ambient: a single full step at 0
      w.set_step(0, Subspace::full(v.dim));
      out.w = {w};
      return out;
    }
    lo_sum += jumps[mu].front();
    hi_sum += jumps[mu].back();
    excess += jumps[mu].back() - jumps[mu].front() + 1;
  }
  for (long long n = lo_sum; n <= hi_sum; ++n) {
    RrefBuilder acc(v.dim);
    std::vector<int> e(g);
    auto rec = [&](auto&& self, int mu, long long rest) -> void {
      if (mu == g) {
        if (rest >= 0) {
          // surplus goes nowhere: require exact consumption via clamping below
        }
        if (rest == 0) {
          Subspace term = Subspace::full(v.dim);
          for (int nu = 0; nu < g && !term.is_zero(); ++nu)
            term = intersect(term, v.w[nu].at(e[nu]));
          for (const Vec& r : term.basis()) acc.absorb(r);
        }
        return;
      }
      long long lo = jumps[mu].front(), hi = jumps[mu].back() + excess;
      for (long long x = lo; x <= hi; ++x) {
        e[mu] = static_cast<int>(x);
        long long remaining = rest - x;
        long long min_rest = 0, max_rest = 0;
        for (int nu = mu + 1; nu < g; ++nu) {
          min_rest += jumps[nu].front();
          max_rest += jumps[nu].back() + excess;
        }
        if (remaining < min_rest || remaining > max_rest) continue;
        self(self, mu + 1, remaining);
      }
    };
    rec(rec, 0, n);
    w.set_step(static_cast<int>(n), acc.take());
  }
  w.normalize();
  out.w = {w};
  return out;
}

MultiFiltered partial_weights(const MultiFiltered& v, const std::vector<int>& I) {
  return WeakAnalysis(v).partial_weights(I);
}

PmhsReport check_pmhs(const MultiFiltered& v) { return WeakAnalysis(v).pmhs(); }

OrthReport validate_orth(const MultiFiltered& v) {
  OrthReport rep;
  int g = v.l();
  if (g != v.m()) throw std::invalid_argument("validate_orth expects l = m");
  for (int mu = 1; mu <= g; ++mu) {
    MhsReport m = validate_mhs(mu_structure(v, mu));
    if (!m.ok) {
      rep.ok = false;
      rep.failures.push_back({mu, 0, "whole space", m.failing_weights,
                              "one-variable structure is not mixed Hodge"});
    }
  }
  for (int mu = 1; mu <= g; ++mu) {
    std::vector<std::pair<std::string, Subspace>> steps;
    for (int j : v.w[mu - 1].jumps())
      steps.push_back({"W^" + std::to_string(mu) + "_" + std::to_string(j),
                       v.w[mu - 1].at(j)});
    for (int j : v.f[mu - 1].jumps())
      steps.push_back({"F_" + std::to_string(mu) + "^" + std::to_string(j),
                       v.f[mu - 1].at(j)});
    for (int j : v.fbar[mu - 1].jumps())
      steps.push_back({"Fbar_" + std::to_string(mu) + "^" + std::to_string(j),
                       v.fbar[mu - 1].at(j)});
    for (const auto& [label, s] : steps)
      for (int nu = 1; nu <= g; ++nu) {
        if (nu == mu) continue;
        MixedHodge restricted{s.dim(), restrict_to(v.w[nu - 1], s),
                              restrict_to(v.f[nu - 1], s),
                              restrict_to(v.fbar[nu - 1], s)};
        MhsReport m = validate_mhs(restricted);
        if (!m.ok) {
          rep.ok = false;
          rep.failures.push_back({mu, nu, label, m.failing_weights,
                                  "restricted structure is not mixed Hodge"});
        }
      }
  }
  return rep;
}

std::map<std::pair<int, int>, Subspace> partial_splitting(const MultiFiltered& v,
                                                          const std::vector<int>& I,
                                                          int mu) {
  MixedHodge h = mu_structure(v, mu);
  return deligne_pieces(h, subset_contains(I, mu));
}

Subspace graded_plectic_filtration(const MultiFiltered& v, const GradedWeights& gr,
                                   const std::vector<int>& I, const std::vector<int>& p,
                                   int n) {
  int block = gr.block_index(n);
  if (block < 0) return Subspace::zero(0);
  Subspace cut = intersect(plectic_filtration(v, I, p), gr.w.at(n));
  return cut.image_under(gr.blocks[block].projection);
}

Subspace graded_induced_intersection(const MultiFiltered& v, const GradedWeights& gr,
                                     const std::vector<int>& I, const std::vector<int>& p,
                                     int n) {
  int block = gr.block_index(n);
  if (block < 0) return Subspace::zero(0);
  int bd = gr.block_dim(block);
  Subspace acc = Subspace::full(bd);
  for (int mu = 1; mu <= v.m() && !acc.is_zero(); ++mu) {
    const DescFiltration& f = subset_contains(I, mu) ? v.fbar[mu - 1] : v.f[mu - 1];
    Subspace cut = intersect(f.at(p[mu - 1]), gr.w.at(n));
    acc = intersect(acc, cut.image_under(gr.blocks[block].projection));
  }
  return acc;
}

MultiFiltered graded_piece_object(const MultiFiltered& v, const GradedWeights& gr, int n) {
  int block = gr.block_index(n);
  MultiFiltered out;
  if (block < 0) return out;
  int bd = gr.block_dim(block);
  out.dim = bd;
  const Mat& proj = gr.blocks[block].projection;
  Subspace wn = gr.w.at(n);
  for (int mu = 0; mu < v.m(); ++mu) {
    DescFiltration f(bd), fbar(bd);
    for (int j : v.f[mu].jumps())
      f.set_step(j, intersect(v.f[mu].at(j), wn).image_under(proj));
    for (int j : v.fbar[mu].jumps())
      fbar.set_step(j, intersect(v.fbar[mu].at(j), wn).image_under(proj));
    f.normalize();
    fbar.normalize();
    out.f.push_back(std::move(f));
    out.fbar.push_back(std::move(fbar));
  }
  return out;
}

Subspace subspace_tensor(const Subspace& a, const Subspace& b) {
  RrefBuilder acc(a.ambient() * b.ambient());
  for (const Vec& x : a.basis())
    for (const Vec& y : b.basis()) acc.absorb(kron(x, y));
  return acc.take();
}

MultiFiltered tensor_filtered(const MultiFiltered& u, const MultiFiltered& v) {
  if (u.l() != 1 || v.l() != 1 || u.m() != v.m())
    throw std::invalid_argument("tensor_filtered expects matching Fil^1_g shapes");
  MultiFiltered out;
  out.dim = u.dim * v.dim;
  AscFiltration w(out.dim);
  std::vector<int> ju = u.w[0].jumps(), jv = v.w[0].jumps();
  std::set<int> totals;
  for (int a : ju)
    for (int b : jv) totals.insert(a + b);
  for (int n : totals) {
    RrefBuilder acc(out.dim);
    for (int a : ju) {
      Subspace term = subspace_tensor(u.w[0].at(a), v.w[0].at(n - a));
      for (const Vec& r : term.basis()) acc.absorb(r);
    }
    for (int b : jv) {
      Subspace term = subspace_tensor(u.w[0].at(n - b), v.w[0].at(b));
      for (const Vec& r : term.basis()) acc.absorb(r);
    }
    w.set_step(n, acc.take());
  }
  if (totals.empty()) w.set_step(0, Subspace::full(out.dim));
  w.normalize();
  out.w = {std::move(w)};
  for (int mu = 0; mu < u.m(); ++mu) {
    auto build = [&](const DescFiltration& fu, const DescFiltration& fv) {
      DescFiltration f(out.dim);
      std::set<int> ps;
      for (int a : fu.jumps())
        for (int b : fv.jumps()) ps.insert(a + b);
      for (int p : ps) {
        RrefBuilder acc(out.dim);
        for (int a : fu.jumps()) {
          Subspace term = subspace_tensor(fu.at(a), fv.at(p - a));
          for (const Vec& r : term.basis()) acc.absorb(r);
        }
        for (int b : fv.jumps()) {
          Subspace term = subspace_tensor(fu.at(p - b), fv.at(b));
          for (const Vec& r : term.basis()) acc.absorb(r);
        }
        f.set_step(p, acc.take());
      }
      if (ps.empty()) f.set_step(0, Subspace::full(out.dim));
      f.normalize();
      return f;
    };
    out.f.push_back(build(u.f[mu], v.f[mu]));
    out.fbar.push_back(build(u.fbar[mu], v.fbar[mu]));
  }
  return out;
}

namespace {

// {alpha : alpha(src step at m) <= tgt step at m + shift for all m}, inside
// the row-major flat hom coordinates (target index major).
Subspace hom_step(int udim, int vdim, const std::vector<std::pair<Subspace, Subspace>>&
                                          constraints /* (source step, target step) */) {
  int hom_dim = udim * vdim;
  std::vector<Vec> rows;
  for (const auto& [src, tgt] : constraints) {
    QuotientMap q = quotient_map(Subspace::full(vdim), tgt);
    for (const Vec& u : src.basis())
      for (int r = 0; r < q.projection.rows(); ++r) {
        Vec row(hom_dim);
        for (int i = 0; i < vdim; ++i) {
          if (q.projection(r, i).is_zero()) continue;
          for (int j = 0; j < udim; ++j)
            if (!u[j].is_zero()) row[i * udim + j] = q.projection(r, i) * u[j];
        }
        rows.push_back(std::move(row));
      }
  }
  if (rows.empty()) return Subspace::full(hom_dim);
  return kernel_of(Mat::from_rows(rows));
}

}  // namespace

MultiFiltered hom_filtered(const MultiFiltered& u, const MultiFiltered& v) {
  if (u.l() != 1 || v.l() != 1 || u.m() != v.m())
    throw std::invalid_argument("hom_filtered expects matching Fil^1_g shapes");
  MultiFiltered out;
  out.dim = u.dim * v.dim;
  auto build_asc = [&](const AscFiltration& fu, const AscFiltration& fv) {
    AscFiltration f(out.dim);
    std::set<int> ns;
    for (int a : fu.jumps())
      for (int b : fv.jumps()) {
        ns.insert(b - a);
        ns.insert(b - a - 1);
        ns.insert(b - a + 1);
      }
    for (int n : ns) {
      std::vector<std::pair<Subspace, Subspace>> constraints;
      for (int a : fu.jumps()) constraints.push_back({fu.at(a), fv.at(a + n)});
      f.set_step(n, hom_step(u.dim, v.dim, constraints));
    }
    if (ns.empty()) f.set_step(0, Subspace::full(out.dim));
    f.normalize();
    return f;
  };
  auto build_desc = [&](const DescFiltration& fu, const DescFiltration& fv) {
    DescFiltration f(out.dim);
    std::set<int> ps;
    for (int a : fu.jumps())
      for (int b : fv.jumps()) {
        ps.insert(b - a);
        ps.insert(b - a - 1);
        ps.insert(b - a + 1);
      }
    for (int p : ps) {
      std::vector<std::pair<Subspace, Subspace>> constraints;
      for (int a : fu.jumps()) constraints.push_back({fu.at(a), fv.at(a + p)});
      f.set_step(p, hom_step(u.dim, v.dim, constraints));
    }
    if (ps.empty()) f.set_step(0, Subspace::full(out.dim));
    f.normalize();
    return f;
  };
  out.w = {build_asc(u.w[0], v.w[0])};
  for (int mu = 0; mu < u.m(); ++mu) {
    out.f.push_back(build_desc(u.f[mu], v.f[mu]));
    out.fbar.push_back(build_desc(u.fbar[mu], v.fbar[mu]));
  }
  return out;
}

}  // namespace plectic
