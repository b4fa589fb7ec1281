#include "plectic/functors.hpp"

#include <set>
#include <sstream>
#include <stdexcept>

namespace plectic {

MultiFiltered phi_g(const PlecticRep& u) {
  RepReport rep = validate_rep(u);
  if (!rep.ok) throw std::invalid_argument("phi_g requires a valid input: " + rep.summary());
  MultiFiltered v;
  v.dim = u.dim;
  for (int mu = 0; mu < u.g; ++mu) {
    std::set<int> totals, ps, qs;
    for (const auto& [deg, sub] : u.pieces) {
      totals.insert(deg.p[mu] + deg.q[mu]);
      ps.insert(deg.p[mu]);
      qs.insert(deg.q[mu]);
    }
    AscFiltration w(u.dim);
    DescFiltration f(u.dim), fbar(u.dim);
    if (totals.empty()) {
      w.set_step(0, Subspace::full(u.dim));
      f.set_step(0, Subspace::full(u.dim));
      fbar.set_step(0, Subspace::full(u.dim));
    } else {
      for (int n : totals)
        w.set_step(n, u.piece_sum([&](const BiDegree& d) {
          return d.p[mu] + d.q[mu] <= n;
        }));
      Mat tinv = u.t[mu].inverse();
      for (int p : ps) {
        Subspace high = u.piece_sum([&](const BiDegree& d) { return d.p[mu] >= p; });
        f.set_step(p, high.image_under(u.t[mu]));
      }
      f.set_step(*ps.begin() - 1, Subspace::full(u.dim));
      for (int q : qs) {
        Subspace high = u.piece_sum([&](const BiDegree& d) { return d.q[mu] >= q; });
        fbar.set_step(q, high.image_under(tinv));
      }
      fbar.set_step(*qs.begin() - 1, Subspace::full(u.dim));
    }
    w.normalize();
    f.normalize();
    fbar.normalize();
    v.w.push_back(std::move(w));
    v.f.push_back(std::move(f));
    v.fbar.push_back(std::move(fbar));
  }
  return v;
}

PsiGResult psi_g(const MultiFiltered& v) {
  int g = v.l();
  if (g != v.m()) throw std::invalid_argument("psi_g expects l = m");
  PsiGResult out;
  out.iso = Mat::identity(v.dim);

  // Working state on the current coordinate space.
  int dim = v.dim;
  std::vector<AscFiltration> ws = v.w;
  std::vector<DescFiltration> fs = v.f, fbars = v.fbar;
  // Per processed index: the bigraded piece family and automorphism.
  std::vector<std::map<std::pair<int, int>, Subspace>> families;
  std::vector<Mat> ts;

  for (int mu = 0; mu < g; ++mu) {
    MixedHodge h{dim, ws[mu], fs[mu], fbars[mu]};
    Psi1Result step = psi1(h);
    const GradedWeights& dec = step.dec;

    // Transport everything else through this graded step.
    for (auto& family : families)
      for (auto& [key, piece] : family) piece = dec.transport(piece);
    for (Mat& t : ts) t = dec.transport_endo(t);
    for (int nu = mu + 1; nu < g; ++nu) {
      ws[nu] = dec.transport(ws[nu]);
      fs[nu] = dec.transport(fs[nu]);
      fbars[nu] = dec.transport(fbars[nu]);
    }
    std::map<std::pair<int, int>, Subspace> family;
    for (const auto& [deg, piece] : step.rep.pieces)
      family.emplace(std::make_pair(deg.p[0], deg.q[0]), piece);
    families.push_back(std::move(family));
    ts.push_back(step.rep.t[0]);
    out.iso = step.equivalence * out.iso;
    out.steps.push_back(dec);
    dim = dec.total;
  }

  out.rep.g = g;
  out.rep.dim = dim;
  out.rep.t = ts;
  // Pieces are the intersections of the per-index families.
  std::map<BiDegree, Subspace> pieces;
  std::vector<std::pair<int, int>> chosen(g);
  auto rec = [&](auto&& self, int mu, Subspace acc) -> void {
    if (acc.is_zero() && mu > 0) return;
    if (mu == g) {
      BiDegree deg;
      for (auto [p, q] : chosen) {
        deg.p.push_back(p);
        deg.q.push_back(q);
      }
      if (!acc.is_zero()) pieces.emplace(std::move(deg), std::move(acc));
      return;
    }
    for (const auto& [key, piece] : families[mu]) {
      chosen[mu] = key;
      self(self, mu + 1, mu == 0 ? piece : intersect(acc, piece));
    }
  };
  if (g == 0) {
    BiDegree deg;
    if (dim > 0) pieces.emplace(deg, Subspace::full(dim));
  } else {
    rec(rec, 0, Subspace::full(dim));
  }
  out.rep.pieces = std::move(pieces);

  RepReport check = validate_rep(out.rep);
  if (!check.ok)
    throw std::invalid_argument("psi_g produced an invalid object (input not orthogonal): " +
                                check.summary());
  return out;
}

Mat transport_antilinear_through(const std::vector<GradedWeights>& steps, Mat s) {
  for (const GradedWeights& dec : steps) s = dec.transport_antilinear(s);
  return s;
}

namespace {

// The canonical comparison at one graded step: decompose along the current
// piece buckets for the index being graded and project each bucket to its
// block.  Conjugation by this map carries the remaining data forward; it
// agrees with the quotient-induced transport on bucket-preserving data but
// also moves the graded index's own automorphism correctly.
Mat bucket_projection(const GradedWeights& dec,
                      const std::map<BiDegree, Subspace>& pieces, int index, int dim) {
  std::vector<Vec> basis, images;
  for (const auto& [deg, piece] : pieces) {
    int n = deg.p[index] + deg.q[index];
    int k = dec.block_index(n);
    if (k < 0) throw std::logic_error("piece bucket has a zero graded block");
    for (const Vec& b : piece.basis()) {
      basis.push_back(b);
      images.push_back(dec.embed(k, dec.blocks[k].projection.apply(b)));
    }
  }
  if (static_cast<int>(basis.size()) != dim)
    throw std::logic_error("pieces do not form a basis");
  Mat m_basis(dim, dim), m_images(dec.total, dim);
  for (int j = 0; j < dim; ++j) {
    for (int i = 0; i < dim; ++i) m_basis(i, j) = basis[j][i];
    for (int i = 0; i < dec.total; ++i) m_images(i, j) = images[j][i];
  }
  return m_images * m_basis.inverse();
}

}  // namespace

bool psi_phi_roundtrip_identity(const PlecticRep& u, std::string* why) {
  MultiFiltered v = phi_g(u);
  PsiGResult res = psi_g(v);
  if (res.rep.g != u.g || res.rep.dim != u.dim) {
    if (why) *why = "rank or dimension changed";
    return false;
  }
  std::map<BiDegree, Subspace> pieces = u.pieces;
  std::vector<Mat> ts = u.t;
  for (std::size_t k = 0; k < res.steps.size(); ++k) {
    Mat kappa = bucket_projection(res.steps[k], pieces, static_cast<int>(k), u.dim);
    Mat kappa_inv = kappa.inverse();
    for (auto& [deg, piece] : pieces) piece = piece.image_under(kappa);
    for (Mat& t : ts) t = kappa * t * kappa_inv;
  }
  if (res.rep.pieces.size() != pieces.size()) {
    if (why) *why = "piece count changed";
    return false;
  }
  for (const auto& [deg, piece] : pieces) {
    const Subspace* target = res.rep.piece(deg);
    if (!target || *target != piece) {
      if (why) {
        std::ostringstream os;
        os << "piece mismatch at p=(";
        for (std::size_t k = 0; k < deg.p.size(); ++k) os << (k ? "," : "") << deg.p[k];
        os << "),q=(";
        for (std::size_t k = 0; k < deg.q.size(); ++k) os << (k ? "," : "") << deg.q[k];
        os << ")";
        *why = os.str();
      }
      return false;
    }
  }
  for (int mu = 0; mu < u.g; ++mu) {
    if (ts[mu] != res.rep.t[mu]) {
      if (why) *why = "automorphism mismatch at index " + std::to_string(mu + 1);
      return false;
    }
  }
  return true;
}

bool filtered_isomorphism(const MultiFiltered& v, const MultiFiltered& w, const Mat& iso) {
  if (v.dim != w.dim || v.l() != w.l() || v.m() != w.m()) return false;
  if (iso.rank() != v.dim) return false;
  for (int k = 0; k < v.l(); ++k)
    if (image_filtration(v.w[k], iso, w.dim) != w.w[k]) return false;
  for (int k = 0; k < v.m(); ++k) {
    if (image_filtration(v.f[k], iso, w.dim) != w.f[k]) return false;
    if (image_filtration(v.fbar[k], iso, w.dim) != w.fbar[k]) return false;
  }
  return true;
}

}  // namespace plectic
