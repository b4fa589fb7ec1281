#include "plectic/realforms.hpp"

#include <stdexcept>

namespace plectic {

namespace {

BiDegree swap_degree(const BiDegree& d) { return BiDegree{d.q, d.p}; }

}  // namespace

RepReport validate_real(const RealPlecticRep& u) {
  RepReport rep = validate_rep(u.rep);
  AntiLinearMap sigma = u.structure();
  if (sigma.s.rows() != u.rep.dim || sigma.s.cols() != u.rep.dim) {
    rep.ok = false;
    rep.violations.push_back({"real structure has wrong shape", 0, {}});
    return rep;
  }
  if (!sigma.is_involution()) {
    rep.ok = false;
    rep.violations.push_back({"real structure is not an involution", 0, {}});
  }
  for (const auto& [deg, sub] : u.rep.pieces) {
    BiDegree swapped = swap_degree(deg);
    const Subspace* target = u.rep.piece(swapped);
    Subspace image = sigma.image(sub);
    bool good = target ? (*target == image) : image.is_zero();
    if (!good) {
      rep.ok = false;
      rep.violations.push_back(
          {"real structure does not exchange conjugate pieces", 0, deg});
    }
  }
  for (int mu = 0; mu < u.rep.g; ++mu) {
    // sigma t sigma = t^{-1}  <=>  S conj(T) conj(S) = T^{-1}
    Mat lhs = sigma.s * u.rep.t[mu].conj() * sigma.s.conj();
    if (lhs * u.rep.t[mu] != Mat::identity(u.rep.dim)) {
      rep.ok = false;
      rep.violations.push_back(
          {"real structure does not invert the automorphism", mu + 1, {}});
    }
  }
  return rep;
}

RepReport validate_real(const RealMultiFiltered& v) {
  RepReport rep;
  AntiLinearMap sigma = v.structure();
  if (sigma.s.rows() != v.v.dim || sigma.s.cols() != v.v.dim) {
    rep.ok = false;
    rep.violations.push_back({"real structure has wrong shape", 0, {}});
    return rep;
  }
  if (!sigma.is_involution()) {
    rep.ok = false;
    rep.violations.push_back({"real structure is not an involution", 0, {}});
    return rep;
  }
  for (int k = 0; k < v.v.l(); ++k)
    for (int j : v.v.w[k].jumps()) {
      Subspace step = v.v.w[k].at(j);
      if (sigma.image(step) != step) {
        rep.ok = false;
        rep.violations.push_back({"weight step is not defined over the reals", k + 1, {}});
        continue;
      }
      // A sigma-stable step restricts to an involution whose fixed space has
      // rational dimension equal to the complex dimension of the step.
      if (step.dim() > 0) {
        Mat restricted(step.dim(), step.dim());
        for (int c = 0; c < step.dim(); ++c) {
          Vec coords = step.coordinates_of(sigma.apply(step.basis()[c]));
          for (int r = 0; r < step.dim(); ++r) restricted(r, c) = coords[r];
        }
        FixedSpace fs = fixed_space(AntiLinearMap{restricted});
        if (fs.qdim() != step.dim()) {
          rep.ok = false;
          rep.violations.push_back(
              {"weight step has no rational basis of full size", k + 1, {}});
        }
      }
    }
  for (int mu = 0; mu < v.v.m(); ++mu) {
    for (int j : v.v.f[mu].jumps())
      if (sigma.image(v.v.f[mu].at(j)) != v.v.fbar[mu].at(j)) {
        rep.ok = false;
        rep.violations.push_back(
            {"real structure does not exchange the Hodge filtrations", mu + 1, {}});
      }
    for (int j : v.v.fbar[mu].jumps())
      if (sigma.image(v.v.fbar[mu].at(j)) != v.v.f[mu].at(j)) {
        rep.ok = false;
        rep.violations.push_back(
            {"real structure does not exchange the Hodge filtrations", mu + 1, {}});
      }
  }
  return rep;
}

RepReport validate_real_morphism(const RealPlecticRep& s, const RealPlecticRep& t,
                                 const Mat& f) {
  RepReport rep = validate_morphism(RepMorphism{s.rep, t.rep, f});
  if (f * s.sigma != t.sigma * f.conj()) {
    rep.ok = false;
    rep.violations.push_back({"morphism does not commute with the real structures", 0, {}});
  }
  return rep;
}

RealPlecticRep tate_real(const std::vector<int>& n) {
  RealPlecticRep out;
  out.rep = tate(n);
  long long total = 0;
  for (int v : n) total += v;
  Mat s(1, 1);
  s(0, 0) = Scalar((total % 2 == 0) ? 1 : -1);
  out.sigma = std::move(s);
  return out;
}

RealPlecticRep tensor(const RealPlecticRep& a, const RealPlecticRep& b) {
  return RealPlecticRep{tensor(a.rep, b.rep), a.sigma.kron(b.sigma)};
}

RealPlecticRep internal_hom(const RealPlecticRep& a, const RealPlecticRep& b) {
  // sigma_hom(alpha) = sigma_b . conj(alpha) . conj(sigma_a) on flat matrices.
  return RealPlecticRep{internal_hom(a.rep, b.rep),
                        flat_hom_map(b.sigma, a.sigma.conj())};
}

RealPlecticRep exterior(const RealPlecticRep& a, const RealPlecticRep& b) {
  return RealPlecticRep{exterior(a.rep, b.rep), a.sigma.kron(b.sigma)};
}

RealPlecticRep direct_sum(const RealPlecticRep& a, const RealPlecticRep& b) {
  Mat s(a.rep.dim + b.rep.dim, a.rep.dim + b.rep.dim);
  for (int i = 0; i < a.rep.dim; ++i)
    for (int j = 0; j < a.rep.dim; ++j) s(i, j) = a.sigma(i, j);
  for (int i = 0; i < b.rep.dim; ++i)
    for (int j = 0; j < b.rep.dim; ++j) s(a.rep.dim + i, a.rep.dim + j) = b.sigma(i, j);
  return RealPlecticRep{direct_sum(a.rep, b.rep), std::move(s)};
}

RealPlecticRep include_rep(const RealPlecticRep& u, int g) {
  return RealPlecticRep{include_rep(u.rep, g), u.sigma};
}

RealPlecticRep change_basis(const RealPlecticRep& u, const Mat& c) {
  // (c sigma c^{-1}) as an anti-linear map has matrix c . S . conj(c)^{-1}.
  return RealPlecticRep{change_basis(u.rep, c), c * u.sigma * c.conj().inverse()};
}

RealMultiFiltered phi_real(const RealPlecticRep& u) {
  return RealMultiFiltered{phi_g(u.rep), u.sigma};
}

PsiRealResult psi_real(const RealMultiFiltered& v) {
  PsiGResult base = psi_g(v.v);
  PsiRealResult out;
  out.rep.rep = base.rep;
  out.rep.sigma = transport_antilinear_through(base.steps, v.sigma);
  out.iso = base.iso;
  out.steps = base.steps;
  return out;
}

RealMultiFiltered total_weight_real(const RealMultiFiltered& v) {
  return RealMultiFiltered{total_weight(v.v), v.sigma};
}

RealMultiFiltered partial_weights_real(const RealMultiFiltered& v,
                                       const std::vector<int>& I) {
  return RealMultiFiltered{partial_weights(v.v, I), v.sigma};
}

FixedSpace rational_points(const RealPlecticRep& u) {
  return fixed_space(u.structure());
}

}  // namespace plectic
