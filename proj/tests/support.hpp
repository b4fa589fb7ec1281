#pragma once

// Shared test helpers: deterministic random generators for valid objects and
// independent brute-force oracles used to freeze expected values.

#include <random>
#include <vector>

#include "plectic/extcalc.hpp"
#include "plectic/functors.hpp"

namespace plectic::testing {

using Rng = std::mt19937_64;

inline int pick(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline Scalar small_scalar(Rng& rng, bool allow_imaginary = true) {
  Scalar s(pick(rng, -2, 2));
  if (allow_imaginary && pick(rng, 0, 2) == 0)
    s += Scalar(Rational(0), Rational(pick(rng, -2, 2)));
  return s;
}

inline Vec random_vector(Rng& rng, int n) {
  Vec v(n);
  for (int k = 0; k < n; ++k) v[k] = small_scalar(rng);
  return v;
}

inline Mat random_invertible(Rng& rng, int n, bool real_entries = false) {
  while (true) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = small_scalar(rng, !real_entries);
    if (m.rank() == n) return m;
  }
}

// Lines at coordinate positions with a strictly bidegree-lowering nilpotent
// twist targeting a sink set, so different twists compose to zero and hence
// commute.  Optionally mirrors a real structure (lines then sit at p = q).
struct LineBlock {
  PlecticRep rep;
  Mat sigma;  // valid when built with `real`
};

inline LineBlock random_line_block(Rng& rng, int g, int dim, bool real) {
  LineBlock out;
  out.rep.g = g;
  out.rep.dim = dim;
  std::vector<BiDegree> degrees(dim);
  std::vector<int> eps(dim, 1);
  for (int i = 0; i < dim; ++i) {
    BiDegree d;
    for (int mu = 0; mu < g; ++mu) {
      int p = pick(rng, -2, 1);
      int q = real ? p : pick(rng, -2, 1);
      d.p.push_back(p);
      d.q.push_back(q);
    }
    degrees[i] = d;
    if (real) eps[i] = pick(rng, 0, 1) ? 1 : -1;
  }
  for (int i = 0; i < dim; ++i) {
    BiDegree d = degrees[i];
    Subspace existing =
        out.rep.piece(d) ? *out.rep.piece(d) : Subspace::zero(dim);
    out.rep.pieces[d] = sum(existing, Subspace::span(dim, {unit_vector(dim, i)}));
  }
  // Sinks are the first half of the lines.
  int sinks = std::max(1, dim / 2);
  for (int mu = 0; mu < g; ++mu) {
    Mat n(dim, dim);
    for (int src = sinks; src < dim; ++src)
      for (int dst = 0; dst < sinks; ++dst) {
        bool admissible = degrees[dst].p[mu] < degrees[src].p[mu] &&
                          degrees[dst].q[mu] < degrees[src].q[mu];
        for (int nu = 0; nu < g && admissible; ++nu) {
          if (nu == mu) continue;
          admissible = degrees[dst].p[nu] == degrees[src].p[nu] &&
                       degrees[dst].q[nu] == degrees[src].q[nu];
        }
        if (!admissible || pick(rng, 0, 1) == 0) continue;
        if (real) {
          // sigma t sigma = t^{-1} forces the coefficient to be purely
          // imaginary (matching signs) or rational (opposite signs).
          int c = pick(rng, 1, 2) * (pick(rng, 0, 1) ? 1 : -1);
          n(dst, src) = (eps[dst] * eps[src] == 1)
                            ? Scalar(Rational(0), Rational(c))
                            : Scalar(c);
        } else {
          Scalar c = small_scalar(rng);
          n(dst, src) = c.is_zero() ? Scalar(1) : c;
        }
      }
    out.rep.t.push_back(Mat::identity(dim) + n);
  }
  if (real) {
    Mat s(dim, dim);
    for (int i = 0; i < dim; ++i) s(i, i) = Scalar(eps[i]);
    out.sigma = std::move(s);
  }
  return out;
}

// Valid object built from twist blocks, direct sums and tensor products,
// finished with a change of basis.  dim <= 6.
inline PlecticRep random_rep(Rng& rng, int g, bool basis_change = true) {
  PlecticRep u = random_line_block(rng, g, pick(rng, 1, 3), false).rep;
  int mode = pick(rng, 0, 2);
  if (mode == 0) {
    u = direct_sum(u, random_line_block(rng, g, pick(rng, 1, 3), false).rep);
  } else if (mode == 1 && u.dim <= 3) {
    u = tensor(u, random_line_block(rng, g, 2, false).rep);
  }
  std::vector<int> n(g);
  for (int mu = 0; mu < g; ++mu) n[mu] = pick(rng, -1, 1);
  u = tensor(u, tate(n));
  if (basis_change) u = change_basis(u, random_invertible(rng, u.dim));
  return u;
}

inline RealPlecticRep random_real_rep(Rng& rng, int g, bool basis_change = true) {
  LineBlock a = random_line_block(rng, g, pick(rng, 1, 3), true);
  RealPlecticRep u{a.rep, a.sigma};
  int mode = pick(rng, 0, 2);
  if (mode == 0) {
    LineBlock b = random_line_block(rng, g, pick(rng, 1, 2), true);
    u = direct_sum(u, RealPlecticRep{b.rep, b.sigma});
  } else if (mode == 1 && u.rep.dim <= 3) {
    LineBlock b = random_line_block(rng, g, 2, true);
    u = tensor(u, RealPlecticRep{b.rep, b.sigma});
  }
  std::vector<int> n(g);
  for (int mu = 0; mu < g; ++mu) n[mu] = pick(rng, -1, 1);
  u = tensor(u, tate_real(n));
  if (basis_change) u = change_basis(u, random_invertible(rng, u.rep.dim));
  return u;
}

// Non-split-ish short exact sequence of real objects: the middle carries
// extra twist entries from the quotient lines into the sub lines.
struct RealSes {
  RealPlecticRep sub, mid, quot;
  Mat inclusion, projection;
};

inline RealSes random_real_ses(Rng& rng, int g) {
  LineBlock block = random_line_block(rng, g, pick(rng, 2, 4), true);
  int dim = block.rep.dim;
  int sinks = std::max(1, dim / 2);
  RealSes out;
  out.mid = RealPlecticRep{block.rep, block.sigma};

  // Sub = sink lines (twist-stable), quot = the remaining lines.
  auto carve = [&](int from, int count) {
    RealPlecticRep part;
    part.rep.g = g;
    part.rep.dim = count;
    for (const auto& [deg, piece] : block.rep.pieces) {
      std::vector<Vec> rows;
      for (const Vec& r : piece.basis()) {
        Vec cut(count);
        bool inside = true;
        for (int k = 0; k < dim; ++k) {
          if (k >= from && k < from + count)
            cut[k - from] = r[k];
          else if (!r[k].is_zero())
            inside = false;
        }
        if (inside && !plectic::is_zero(cut)) rows.push_back(cut);
      }
      Subspace s = Subspace::span(count, rows);
      if (!s.is_zero()) part.rep.pieces.emplace(deg, std::move(s));
    }
    for (int mu = 0; mu < g; ++mu) {
      Mat t(count, count);
      for (int i = 0; i < count; ++i)
        for (int j = 0; j < count; ++j) t(i, j) = block.rep.t[mu](from + i, from + j);
      part.rep.t.push_back(std::move(t));
    }
    Mat s(count, count);
    for (int i = 0; i < count; ++i)
      for (int j = 0; j < count; ++j) s(i, j) = block.sigma(from + i, from + j);
    part.sigma = std::move(s);
    return part;
  };
  out.sub = carve(0, sinks);
  out.quot = carve(sinks, dim - sinks);
  out.inclusion = Mat::zero(dim, sinks);
  for (int i = 0; i < sinks; ++i) out.inclusion(i, i) = Scalar(1);
  out.projection = Mat::zero(dim - sinks, dim);
  for (int i = 0; i < dim - sinks; ++i) out.projection(i, sinks + i) = Scalar(1);
  return out;
}

// --- brute-force oracles ---------------------------------------------------

// Wide-box evaluation of the total-degree trace, independent of the library
// truncation logic.
inline Subspace brute_total_filtration(const MultiFiltered& v, const std::vector<int>& I,
                                       int total, int margin) {
  int g = v.m();
  std::vector<std::pair<int, int>> box(g);
  for (int mu = 1; mu <= g; ++mu) {
    const DescFiltration& f =
        subset_contains(I, mu) ? v.fbar[mu - 1] : v.f[mu - 1];
    auto [lo, hi] = f.support();
    box[mu - 1] = {lo - margin, hi + margin};
  }
  RrefBuilder acc(v.dim);
  std::vector<int> p(g);
  auto rec = [&](auto&& self, int mu, int rest) -> void {
    if (mu == g) {
      if (rest == 0) {
        Subspace term = plectic_filtration(v, I, p);
        for (const Vec& r : term.basis()) acc.absorb(r);
      }
      return;
    }
    for (int e = box[mu].first; e <= box[mu].second; ++e) {
      p[mu] = e;
      self(self, mu + 1, rest - e);
    }
  };
  rec(rec, 0, total);
  return acc.take();
}

// Wide-box reimplementation of the pure-weak conditions for one subset:
// collects the nonzero bigraded pieces of total weight n over a margin box,
// checks directness, and compares the piece sums against the intersection
// filtration at every probe in the box.  Used to cross-check the
// class-interval enumeration in the library.
inline bool brute_pure_weak(const MultiFiltered& v, const std::vector<int>& I, int n,
                            int margin) {
  int g = v.m();
  std::vector<std::pair<int, int>> box(g);
  for (int mu = 1; mu <= g; ++mu) {
    const DescFiltration& f = subset_contains(I, mu) ? v.fbar[mu - 1] : v.f[mu - 1];
    const DescFiltration& fb = subset_contains(I, mu) ? v.f[mu - 1] : v.fbar[mu - 1];
    auto [lo1, hi1] = f.support();
    auto [lo2, hi2] = fb.support();
    box[mu - 1] = {std::min(lo1, lo2) - margin, std::max(hi1, hi2) + margin};
  }
  // Enumerate pieces with |r + s| = n.
  struct Piece {
    std::vector<int> r, s;
    Subspace value;
  };
  std::vector<Piece> pieces;
  RrefBuilder all(v.dim);
  bool direct = true;
  std::vector<int> rs(2 * g);
  auto rec = [&](auto&& self, int k, int rest) -> void {
    if (!direct) return;
    if (k == 2 * g) {
      if (rest != 0) return;
      std::vector<int> r(rs.begin(), rs.begin() + g), s(rs.begin() + g, rs.end());
      Subspace value =
          intersect(plectic_filtration(v, I, r), plectic_filtration_conj(v, I, s));
      if (value.is_zero()) return;
      for (const Vec& row : value.basis())
        if (!all.absorb(row)) {
          direct = false;
          return;
        }
      pieces.push_back({std::move(r), std::move(s), std::move(value)});
      return;
    }
    auto [lo, hi] = box[k % g];
    for (int e = lo; e <= hi; ++e) {
      rs[k] = e;
      self(self, k + 1, rest - e);
    }
  };
  rec(rec, 0, n);
  if (!direct) return false;
  // Pieces of larger total must vanish: the corner of the supports bounds
  // the largest achievable total.
  long long max_total = 0;
  for (int mu = 1; mu <= g; ++mu) {
    const DescFiltration& f = subset_contains(I, mu) ? v.fbar[mu - 1] : v.f[mu - 1];
    const DescFiltration& fb = subset_contains(I, mu) ? v.f[mu - 1] : v.fbar[mu - 1];
    max_total += f.support().second + fb.support().second;
  }
  for (long long m = n + 1; m <= max_total; ++m) {
    bool nonzero = false;
    auto rec2 = [&](auto&& self, int k, long long rest) -> void {
      if (nonzero) return;
      if (k == 2 * g) {
        if (rest != 0) return;
        std::vector<int> r(rs.begin(), rs.begin() + g), s(rs.begin() + g, rs.end());
        if (!intersect(plectic_filtration(v, I, r), plectic_filtration_conj(v, I, s))
                 .is_zero())
          nonzero = true;
        return;
      }
      auto [lo, hi] = box[k % g];
      for (int e = lo; e <= hi; ++e) {
        rs[k] = e;
        self(self, k + 1, rest - e);
      }
    };
    rec2(rec2, 0, m);
    if (nonzero) return false;
  }
  // Probe every exponent vector in the box.
  std::vector<int> p(g);
  bool ok = true;
  auto probe = [&](auto&& self, int mu) -> void {
    if (!ok) return;
    if (mu == g) {
      Subspace lhs = plectic_filtration(v, I, p);
      RrefBuilder acc(v.dim);
      for (const Piece& piece : pieces) {
        bool ge = true;
        for (int k = 0; k < g; ++k) ge = ge && piece.r[k] >= p[k];
        if (ge)
          for (const Vec& row : piece.value.basis()) acc.absorb(row);
      }
      if (acc.take() != lhs) ok = false;
      return;
    }
    for (int e = box[mu].first - 1; e <= box[mu].second + 1; ++e) {
      p[mu] = e;
      self(self, mu + 1);
    }
  };
  probe(probe, 0);
  return ok;
}

// Direct wide-box check of the representative-system inclusion (condition c).
inline bool brute_condition_c(const MultiFiltered& v, const std::vector<int>& I,
                              const std::vector<int>& p, const std::vector<int>& q,
                              int jmax) {
  int g = v.m();
  long long n = 0;
  for (int mu = 0; mu < g; ++mu) n += p[mu] + static_cast<long long>(q[mu]);
  const AscFiltration& w = v.w[0];
  Subspace fp = plectic_filtration(v, I, p);
  Subspace fq = plectic_filtration_conj(v, I, q);
  Subspace lhs = intersect(sum(intersect(fp, w.at(static_cast<int>(n))),
                               intersect(fq, w.at(static_cast<int>(n)))),
                           w.at(static_cast<int>(n) - 1));
  RrefBuilder rhs(v.dim);
  Subspace lead = intersect(fp, w.at(static_cast<int>(n) - 1));
  for (const Vec& r : lead.basis()) rhs.absorb(r);
  std::vector<int> j(g, 0);
  auto rec = [&](auto&& self, int mu) -> void {
    if (mu == g) {
      long long total_j = 0;
      std::vector<int> shifted(g);
      for (int k = 0; k < g; ++k) {
        total_j += j[k];
        shifted[k] = q[k] - j[k];
      }
      Subspace term = intersect(plectic_filtration_conj(v, I, shifted),
                                w.at(static_cast<int>(n - total_j) - 1));
      for (const Vec& r : term.basis()) rhs.absorb(r);
      return;
    }
    for (int x = 0; x <= jmax; ++x) {
      j[mu] = x;
      self(self, mu + 1);
    }
  };
  rec(rec, 0);
  return rhs.take().contains(lhs);
}

}  // namespace plectic::testing
