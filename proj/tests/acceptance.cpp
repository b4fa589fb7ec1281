// Acceptance suite: one line per criterion, zero tolerance throughout.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "plectic/io.hpp"
#include "support.hpp"

using namespace plectic;
using plectic::testing::Rng;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int number, const std::string& name, bool ok, double seconds,
            const std::string& detail = "") {
  std::ostringstream os;
  os << (ok ? "PASS" : "FAIL") << "  criterion " << number << "  " << name << "  ("
     << seconds << " s)";
  if (!ok && !detail.empty()) os << "  -- " << detail;
  std::cout << os.str() << "\n";
  if (!ok) ++failures;
}

int ext_dim(const Cohomology& coh, int m) {
  auto it = coh.dims.find(m);
  return it == coh.dims.end() ? 0 : it->second;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// The shared random corpus for criteria 4 and 5.
std::vector<PlecticRep> build_corpus() {
  Rng rng(20260808);
  std::vector<PlecticRep> corpus;
  for (int k = 0; k < 45; ++k) corpus.push_back(testing::random_rep(rng, 1));
  for (int k = 0; k < 40; ++k) corpus.push_back(testing::random_rep(rng, 2));
  for (int k = 0; k < 20; ++k) {
    PlecticRep u = testing::random_rep(rng, 3);
    while (u.dim > 6) u = testing::random_rep(rng, 3);
    corpus.push_back(std::move(u));
  }
  return corpus;
}

void criterion_1() {
  auto start = Clock::now();
  bool ok = true;
  std::string detail;
  for (int g = 1; g <= 3 && ok; ++g)
    for (int n : {-1, 0, 1, 2}) {
      Cohomology coh = ext_groups(single_object_complex(tate_real(std::vector<int>(g, n))));
      for (int m = -1; m <= g + 1; ++m) {
        int expected = (m == 0 && n == 0) || (m == g && n > 0) ? 1 : 0;
        if (ext_dim(coh, m) != expected) {
          ok = false;
          std::ostringstream os;
          os << "g=" << g << " n=" << n << " m=" << m;
          detail = os.str();
        }
      }
    }
  double secs = std::chrono::duration<double>(Clock::now() - start).count();
  if (secs >= 1.0) {
    ok = false;
    detail += " (over the one-second budget)";
  }
  report(1, "twist extension table", ok, secs, detail);
}

void criterion_2() {
  auto start = Clock::now();
  Document doc = parse_document(
      slurp(std::string(FIXTURE_DIR) + "/weak2_graded_pure_counterexample.json"));
  const MultiFiltered& v = doc.filtered;
  bool ok = true;
  std::string detail;
  GradedWeights gw = graded_weights(v.dim, v.w[0]);
  Subspace lhs = graded_plectic_filtration(v, gw, {}, {0, 0}, 0);
  Subspace rhs = graded_induced_intersection(v, gw, {}, {0, 0}, 0);
  if (lhs.dim() != 0 || rhs.dim() != 1) {
    ok = false;
    detail = "graded filtration dimensions differ from the expected 0 and 1";
  }
  WeakReport rep = check_weak(v);
  if (rep.ok || rep.condition_holds('a', {})) {
    ok = false;
    detail = "condition (a) for the empty subset did not fail";
  }
  for (int n : v.w[0].jumps())
    if (!rep.graded_pure.count(n) || !rep.graded_pure.at(n)) {
      ok = false;
      detail = "a graded piece is not pure weak of its weight";
    }
  report(2, "graded-pure counterexample", ok,
         std::chrono::duration<double>(Clock::now() - start).count(), detail);
}

void criterion_3() {
  auto start = Clock::now();
  Document doc = parse_document(
      slurp(std::string(FIXTURE_DIR) + "/weak2_unequal_partial_weights.json"));
  const MultiFiltered& v = doc.filtered;
  bool ok = true;
  std::string detail;
  WeakReport rep = check_weak(v);
  if (!rep.ok) {
    ok = false;
    detail = "a weak condition failed";
  }
  for (const WeakVerdict& verdict : rep.verdicts)
    if (!verdict.a || !verdict.b || !verdict.c) ok = false;
  PmhsReport prep = check_pmhs(v);
  Subspace plus = Subspace::span(2, {Vec{Scalar(1), Scalar::i()}});
  Subspace minus = Subspace::span(2, {Vec{Scalar(1), -Scalar::i()}});
  MultiFiltered pw_empty = partial_weights(v, {});
  MultiFiltered pw_two = partial_weights(v, {2});
  if (prep.ok) {
    ok = false;
    detail = "subset independence did not fail";
  } else if (pw_empty.w[0].at(0) != plus || pw_two.w[0].at(0) != minus) {
    ok = false;
    detail = "the differing weight steps are not the expected conjugate lines";
  }
  report(3, "subset-dependent weights example", ok,
         std::chrono::duration<double>(Clock::now() - start).count(), detail);
}

void criteria_4_and_5() {
  auto start = Clock::now();
  std::vector<PlecticRep> corpus = build_corpus();
  bool ok4 = true, ok5 = true;
  std::string det4, det5;
  for (const PlecticRep& u : corpus) {
    int g = u.g;
    // --- criterion 4: round trips and validator closure ---
    std::string why;
    if (!psi_phi_roundtrip_identity(u, &why)) {
      ok4 = false;
      det4 = "psi.phi identity failed: " + why;
      break;
    }
    MultiFiltered orth = phi_g(u);
    if (!validate_orth(orth).ok) {
      ok4 = false;
      det4 = "phi output failed the family validator";
      break;
    }
    MultiFiltered tw = total_weight(orth);
    WeakAnalysis analysis(tw);
    if (!analysis.report().ok) {
      ok4 = false;
      det4 = "total-weight output failed the weak validator";
      break;
    }
    if (!analysis.pmhs().ok) {
      ok4 = false;
      det4 = "total-weight output is not subset independent";
      break;
    }
    for (const std::vector<int>& I : subsets_of(g)) {
      MultiFiltered back = analysis.partial_weights(I);
      for (int mu = 0; mu < g; ++mu)
        if (back.w[mu] != orth.w[mu]) {
          ok4 = false;
          det4 = "partial weights do not invert the total weight";
        }
      if (total_weight(back).w[0] != tw.w[0]) {
        ok4 = false;
        det4 = "total weight does not invert the partial weights";
      }
    }
    if (!ok4) break;

    // --- criterion 5: splitting identities ---
    GradedWeights gw = graded_weights(tw.dim, tw.w[0]);
    for (const std::vector<int>& I : subsets_of(g)) {
      const auto& pieces = analysis.splitting(I);
      int total = 0;
      RrefBuilder all(tw.dim);
      for (const auto& [deg, piece] : pieces) {
        total += piece.dim();
        for (const Vec& r : piece.basis())
          if (!all.absorb(r)) ok5 = false;
      }
      if (total != tw.dim || !ok5) {
        ok5 = false;
        det5 = "splitting pieces do not decompose the space";
        break;
      }
      for (int n : tw.w[0].jumps()) {
        RrefBuilder acc(tw.dim);
        for (const auto& [deg, piece] : pieces) {
          int weight = 0;
          for (int mu = 0; mu < g; ++mu) weight += deg.p[mu] + deg.q[mu];
          if (weight <= n)
            for (const Vec& r : piece.basis()) acc.absorb(r);
        }
        if (acc.take() != tw.w[0].at(n)) {
          ok5 = false;
          det5 = "weight recovery failed";
        }
      }
      for (const auto& [probe, unused] : pieces) {
        RrefBuilder acc(tw.dim);
        for (const auto& [deg, piece] : pieces) {
          bool ge = true;
          for (int mu = 0; mu < g; ++mu) ge = ge && deg.p[mu] >= probe.p[mu];
          if (ge)
            for (const Vec& r : piece.basis()) acc.absorb(r);
        }
        if (acc.take() != plectic_filtration(tw, I, probe.p)) {
          ok5 = false;
          det5 = "plectic filtration recovery failed";
        }
      }
      // Per-index splittings intersect to the plectic splitting.
      std::vector<std::map<std::pair<int, int>, Subspace>> per_index;
      for (int mu = 1; mu <= g; ++mu)
        per_index.push_back(partial_splitting(orth, I, mu));
      int covered = 0;
      std::vector<std::pair<int, int>> chosen(g);
      auto rec = [&](auto&& self, int mu, Subspace acc) -> void {
        if (mu > 0 && acc.is_zero()) return;
        if (mu == g) {
          BiDegree deg;
          for (auto [p, q] : chosen) {
            deg.p.push_back(p);
            deg.q.push_back(q);
          }
          auto it = pieces.find(deg);
          Subspace expected =
              it == pieces.end() ? Subspace::zero(tw.dim) : it->second;
          if (acc != expected) {
            ok5 = false;
            det5 = "per-index intersection disagrees with the plectic piece";
          } else {
            covered += acc.dim();
          }
          return;
        }
        for (const auto& [key, piece] : per_index[mu]) {
          chosen[mu] = key;
          self(self, mu + 1, mu == 0 ? piece : intersect(acc, piece));
        }
      };
      rec(rec, 0, Subspace::full(tw.dim));
      if (covered != tw.dim) {
        ok5 = false;
        det5 = "per-index intersections do not cover the space";
      }
      if (!ok5) break;
    }
    if (!ok5) break;
  }
  double secs = std::chrono::duration<double>(Clock::now() - start).count();
  if (secs >= 60.0) {
    ok4 = false;
    det4 += " (over the sixty-second budget)";
  }
  report(4, "round trips over the random corpus", ok4, secs, det4);
  report(5, "splitting identities over the random corpus", ok5, secs, det5);
}

void criterion_6() {
  auto start = Clock::now();
  Rng rng(606);
  bool ok = true;
  for (int trial = 0; trial < 50 && ok; ++trial) {
    int dim = testing::pick(rng, 1, 6);
    int nilpotency = testing::pick(rng, 1, 5);
    Mat n(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = i + 1; j < dim && j <= i + nilpotency; ++j)
        n(i, j) = testing::small_scalar(rng);
    Mat c = testing::random_invertible(rng, dim);
    Mat s = c * (Mat::identity(dim) + n) * c.inverse();
    Mat t = sqrt_unipotent(s);
    if (t * t != s) ok = false;
  }
  report(6, "unipotent square roots", ok,
         std::chrono::duration<double>(Clock::now() - start).count());
}

void criterion_7() {
  auto start = Clock::now();
  Rng rng(707);
  bool ok = true;
  int built = 0;
  while (built < 50 && ok) {
    int g = testing::pick(rng, 1, 3);
    testing::RealSes ses = testing::random_real_ses(rng, g);
    if (!validate_real(ses.mid).ok || !validate_real(ses.sub).ok ||
        !validate_real(ses.quot).ok)
      continue;
    ++built;
    std::vector<int> m(g);
    for (int mask = 0; mask < (1 << g); ++mask) {
      for (int k = 0; k < g; ++k) m[k] = (mask >> k) & 1;
      if (a_multi(ses.mid, m).dim() !=
          a_multi(ses.sub, m).dim() + a_multi(ses.quot, m).dim())
        ok = false;
    }
  }
  report(7, "fixed-subspace exactness over exact sequences", ok,
         std::chrono::duration<double>(Clock::now() - start).count());
}

void criterion_8() {
  auto start = Clock::now();
  Rng rng(808);
  bool ok = true;
  int built = 0;
  while (built < 20 && ok) {
    int g = testing::pick(rng, 1, 2);
    RealPlecticRep a = testing::random_real_rep(rng, g);
    RealPlecticRep b = testing::random_real_rep(rng, g);
    RealPlecticRep middle = direct_sum(a, b);
    Mat incl = Mat::zero(middle.rep.dim, a.rep.dim);
    for (int i = 0; i < a.rep.dim; ++i) incl(i, i) = Scalar(1);
    Mat proj = Mat::zero(b.rep.dim, middle.rep.dim);
    for (int i = 0; i < b.rep.dim; ++i) proj(i, a.rep.dim + i) = Scalar(1);
    RepComplex u;
    u.lo = testing::pick(rng, -1, 0);
    u.objects = {a, middle, b};
    u.d = {incl, proj};
    if (!validate_complex(u).ok) continue;
    ++built;
    RealPlecticRep w = testing::random_real_rep(rng, g);
    RepComplex v;
    v.lo = u.lo;
    v.objects = {a, direct_sum(middle, w), direct_sum(b, w)};
    Mat incl2 = Mat::zero(v.objects[1].rep.dim, a.rep.dim);
    for (int i = 0; i < a.rep.dim; ++i) incl2(i, i) = Scalar(1);
    Mat d2 = Mat::zero(v.objects[2].rep.dim, v.objects[1].rep.dim);
    for (int i = 0; i < b.rep.dim; ++i) d2(i, a.rep.dim + i) = Scalar(1);
    for (int i = 0; i < w.rep.dim; ++i)
      d2(b.rep.dim + i, middle.rep.dim + i) = Scalar(1);
    v.d = {incl2, d2};
    if (!validate_complex(v).ok) {
      ok = false;
      continue;
    }
    Cohomology cu = ext_groups(u);
    Cohomology cv = ext_groups(v);
    for (int m = u.lo - 1; m <= u.hi() + g + 1; ++m)
      if (ext_dim(cu, m) != ext_dim(cv, m)) ok = false;
  }
  report(8, "quasi-isomorphism invariance", ok,
         std::chrono::duration<double>(Clock::now() - start).count());
}

void criterion_9() {
  auto start = Clock::now();
  Rng rng(909);
  bool ok = true;
  for (int trial = 0; trial < 8 && ok; ++trial) {
    int g = testing::pick(rng, 1, 3);
    std::vector<Cohomology> per_factor;
    RealPlecticRep prod;
    for (int k = 0; k < g; ++k) {
      RealPlecticRep f = testing::random_real_rep(rng, 1);
      while (f.rep.dim > 3) f = testing::random_real_rep(rng, 1);
      per_factor.push_back(ext_groups(single_object_complex(f)));
      prod = (k == 0) ? f : exterior(prod, f);
    }
    Cohomology total = ext_groups(single_object_complex(prod));
    for (int m = 0; m <= g; ++m) {
      int expected = 0;
      std::vector<int> idx(g, 0);
      auto rec = [&](auto&& self, int k, int rest) -> void {
        if (k == g) {
          if (rest == 0) {
            int term = 1;
            for (int j = 0; j < g; ++j) term *= ext_dim(per_factor[j], idx[j]);
            expected += term;
          }
          return;
        }
        for (int v = 0; v <= 1; ++v) {
          idx[k] = v;
          self(self, k + 1, rest - v);
        }
      };
      rec(rec, 0, m);
      if (ext_dim(total, m) != expected) ok = false;
    }
  }
  report(9, "exterior-product factorization of extension groups", ok,
         std::chrono::duration<double>(Clock::now() - start).count());
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criteria_4_and_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  if (failures) {
    std::cout << failures << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all criteria passed\n";
  return 0;
}
