#include "plectic/hodge.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <sstream>
#include <stdexcept>

namespace plectic {

namespace {

// Grid of p at which the pair (F^p, Fbar^{n+1-p}) can change value.
std::vector<int> opposedness_grid(const DescFiltration& f, const DescFiltration& fbar, int n) {
  std::set<int> ps;
  for (int j : f.jumps()) {
    ps.insert(j);
    ps.insert(j + 1);
  }
  for (int j : fbar.jumps()) {
    ps.insert(n + 1 - j);
    ps.insert(n - j);
  }
  if (ps.empty()) ps.insert(0);
  ps.insert(*ps.begin() - 1);
  ps.insert(*ps.rbegin() + 1);
  return {ps.begin(), ps.end()};
}

}  // namespace

bool validate_pure(int dim, const DescFiltration& f, const DescFiltration& fbar, int n) {
  for (int p : opposedness_grid(f, fbar, n)) {
    Subspace fp = f.at(p);
    Subspace fq = fbar.at(n + 1 - p);
    if (fp.dim() + fq.dim() != dim) return false;
    if (!intersect(fp, fq).is_zero()) return false;
  }
  return true;
}

std::optional<std::map<std::pair<int, int>, Subspace>> pure_bigrading(
    int dim, const DescFiltration& f, const DescFiltration& fbar, int n) {
  std::map<std::pair<int, int>, Subspace> pieces;
  auto [flo, fhi] = f.support();
  auto [blo, bhi] = fbar.support();
  RrefBuilder all(dim);
  int total = 0;
  // Nonzero pieces need p <= fhi and q = n - p <= bhi; below the supports the
  // filtrations are full, so the grid is finite.
  for (int p = n - bhi - 1; p <= fhi + 1; ++p) {
    int q = n - p;
    Subspace piece = intersect(f.at(p), fbar.at(q));
    if (piece.is_zero()) continue;
    // Distinct integer points with identical nonzero values would repeat in
    // the full sum, so directness also rules out off-grid duplicates: the
    // grid covers one point past both supports.
    total += piece.dim();
    for (const Vec& r : piece.basis())
      if (!all.absorb(r)) return std::nullopt;
    pieces.emplace(std::make_pair(p, q), std::move(piece));
  }
  if (total != dim || all.rank() != dim) return std::nullopt;
  return pieces;
}

GradedWeights graded_weights(int dim, const AscFiltration& w) {
  GradedWeights d;
  d.old_dim = dim;
  d.w = w;
  for (int n : w.jumps()) {
    QuotientMap q = quotient_map(w.at(n), w.at(n - 1));
    if (q.complement.empty()) continue;
    d.weights.push_back(n);
    d.offsets.push_back(d.total);
    d.total += static_cast<int>(q.complement.size());
    d.blocks.push_back(std::move(q));
  }
  return d;
}

int GradedWeights::block_index(int weight) const {
  for (std::size_t k = 0; k < weights.size(); ++k)
    if (weights[k] == weight) return static_cast<int>(k);
  return -1;
}

int GradedWeights::block_dim(int k) const {
  return static_cast<int>(blocks[k].complement.size());
}

Mat GradedWeights::block_map(int k) const {
  Mat m(total, old_dim);
  const Mat& proj = blocks[k].projection;
  for (int i = 0; i < proj.rows(); ++i)
    for (int j = 0; j < old_dim; ++j) m(offsets[k] + i, j) = proj(i, j);
  return m;
}

Vec GradedWeights::embed(int k, const Vec& block_vec) const {
  Vec v(total);
  for (std::size_t i = 0; i < block_vec.size(); ++i) v[offsets[k] + i] = block_vec[i];
  return v;
}

Subspace GradedWeights::transport(const Subspace& s) const {
  RrefBuilder acc(total);
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    Subspace cut = intersect(s, w.at(weights[k]));
    for (const Vec& r : cut.basis()) acc.absorb(embed(k, blocks[k].projection.apply(r)));
  }
  return acc.take();
}

AscFiltration GradedWeights::transport(const AscFiltration& f) const {
  AscFiltration out(total);
  for (const auto& [n, s] : f.steps()) out.set_step(n, transport(s));
  out.normalize();
  return out;
}

DescFiltration GradedWeights::transport(const DescFiltration& f) const {
  DescFiltration out(total);
  for (const auto& [n, s] : f.steps()) out.set_step(n, transport(s));
  out.normalize();
  return out;
}

Mat GradedWeights::transport_endo(const Mat& m) const {
  for (std::size_t k = 0; k < weights.size(); ++k) {
    Subspace step = w.at(weights[k]);
    if (!step.contains(step.image_under(m)))
      throw std::invalid_argument("endomorphism does not preserve the weight steps");
  }
  Mat out(total, total);
  for (std::size_t k = 0; k < blocks.size(); ++k)
    for (std::size_t c = 0; c < blocks[k].complement.size(); ++c) {
      Vec image = blocks[k].projection.apply(m.apply(blocks[k].complement[c]));
      for (std::size_t i = 0; i < image.size(); ++i)
        out(offsets[k] + static_cast<int>(i), offsets[k] + static_cast<int>(c)) = image[i];
    }
  return out;
}

Mat GradedWeights::transport_antilinear(const Mat& s) const {
  AntiLinearMap sigma{s};
  for (std::size_t k = 0; k < weights.size(); ++k) {
    Subspace step = w.at(weights[k]);
    if (!step.contains(sigma.image(step)))
      throw std::invalid_argument("anti-linear map does not preserve the weight steps");
  }
  Mat out(total, total);
  for (std::size_t k = 0; k < blocks.size(); ++k)
    for (std::size_t c = 0; c < blocks[k].complement.size(); ++c) {
      Vec image = blocks[k].projection.apply(sigma.apply(blocks[k].complement[c]));
      for (std::size_t i = 0; i < image.size(); ++i)
        out(offsets[k] + static_cast<int>(i), offsets[k] + static_cast<int>(c)) = image[i];
    }
  return out;
}

MhsReport validate_mhs(const MixedHodge& v) {
  MhsReport rep;
  auto wrep = v.w.validate();
  auto frep = v.f.validate();
  auto brep = v.fbar.validate();
  if (!wrep.ok || !frep.ok || !brep.ok) {
    rep.ok = false;
    rep.issues.push_back("a filtration is malformed");
    return rep;
  }
  for (int n : v.w.jumps()) {
    QuotientMap q = quotient_map(v.w.at(n), v.w.at(n - 1));
    int gdim = static_cast<int>(q.complement.size());
    if (gdim == 0) continue;
    DescFiltration f_gr = image_filtration(induced_on(v.f, v.w.at(n)), q.projection, gdim);
    DescFiltration fbar_gr =
        image_filtration(induced_on(v.fbar, v.w.at(n)), q.projection, gdim);
    if (!validate_pure(gdim, f_gr, fbar_gr, n)) {
      rep.ok = false;
      rep.failing_weights.push_back(n);
      std::ostringstream os;
      os << "graded piece at weight " << n << " is not pure of weight " << n;
      rep.issues.push_back(os.str());
    }
  }
  return rep;
}

std::map<std::pair<int, int>, Subspace> deligne_pieces(const MixedHodge& v, bool conjugate) {
  const DescFiltration& f = conjugate ? v.fbar : v.f;
  const DescFiltration& fbar = conjugate ? v.f : v.fbar;
  std::map<std::pair<int, int>, Subspace> out;
  if (v.w.jumps().empty()) return out;
  auto [wlo, whi] = v.w.support();
  int fhi = f.support().second;
  int bhi = fbar.support().second;
  for (int n = wlo; n <= whi; ++n) {
    Subspace wn = v.w.at(n);
    if (wn.is_zero()) continue;
    for (int p = n - bhi; p <= fhi; ++p) {
      int q = n - p;
      Subspace left = intersect(f.at(p), wn);
      if (left.is_zero()) continue;
      RrefBuilder right(v.dim);
      Subspace lead = intersect(fbar.at(q), wn);
      for (const Vec& r : lead.basis()) right.absorb(r);
      for (int j = 0; n - j - 1 >= wlo; ++j) {
        Subspace term = intersect(fbar.at(q - j), v.w.at(n - j - 1));
        for (const Vec& r : term.basis()) right.absorb(r);
      }
      Subspace piece = intersect(left, right.take());
      if (!piece.is_zero()) out.emplace(std::make_pair(p, q), std::move(piece));
    }
  }
  return out;
}

std::map<std::pair<int, int>, Subspace> deligne_splitting(const MixedHodge& v,
                                                          bool conjugate) {
  MhsReport rep = validate_mhs(v);
  if (!rep.ok)
    throw std::invalid_argument("deligne_splitting requires a mixed Hodge structure");
  auto pieces = deligne_pieces(v, conjugate);
  RrefBuilder all(v.dim);
  int total = 0;
  for (const auto& [key, piece] : pieces) {
    total += piece.dim();
    for (const Vec& r : piece.basis())
      if (!all.absorb(r)) throw std::logic_error("splitting pieces are not independent");
  }
  if (total != v.dim)
    throw std::logic_error("splitting pieces do not exhaust the space");
  return pieces;
}

RepReport validate_hodge_morphism(const HodgeMorphism& f) {
  RepReport rep;
  if (f.matrix.rows() != f.target.dim || f.matrix.cols() != f.source.dim) {
    rep.ok = false;
    rep.violations.push_back({"morphism matrix has wrong shape", 0, {}});
    return rep;
  }
  auto check_desc = [&](const DescFiltration& a, const DescFiltration& b,
                        const char* name) {
    for (int j : a.jumps())
      if (!b.at(j).contains(a.at(j).image_under(f.matrix))) {
        rep.ok = false;
        rep.violations.push_back({std::string("not compatible with ") + name, j, {}});
      }
  };
  for (int j : f.source.w.jumps())
    if (!f.target.w.at(j).contains(f.source.w.at(j).image_under(f.matrix))) {
      rep.ok = false;
      rep.violations.push_back({"not compatible with W", j, {}});
    }
  check_desc(f.source.f, f.target.f, "F");
  check_desc(f.source.fbar, f.target.fbar, "Fbar");
  return rep;
}

namespace {

Subspace wf_sum(const MixedHodge& v, const std::vector<std::pair<int, int>>& s,
                bool conjugate) {
  const DescFiltration& f = conjugate ? v.fbar : v.f;
  RrefBuilder acc(v.dim);
  for (auto [p, n] : s) {
    Subspace term = intersect(f.at(p), v.w.at(n));
    for (const Vec& r : term.basis()) acc.absorb(r);
  }
  return acc.take();
}

Subspace piece_sum_over(const std::map<std::pair<int, int>, Subspace>& pieces,
                        const std::vector<std::pair<int, int>>& s, int dim) {
  RrefBuilder acc(dim);
  for (auto key : s) {
    auto it = pieces.find(key);
    if (it == pieces.end()) continue;
    for (const Vec& r : it->second.basis()) acc.absorb(r);
  }
  return acc.take();
}

}  // namespace

bool strict_on_wf(const HodgeMorphism& f, const std::vector<std::pair<int, int>>& s,
                  bool conjugate) {
  Subspace lhs = wf_sum(f.source, s, conjugate).image_under(f.matrix);
  Subspace image = Subspace::full(f.source.dim).image_under(f.matrix);
  Subspace rhs = intersect(image, wf_sum(f.target, s, conjugate));
  return lhs == rhs;
}

bool strict_on_pieces(const HodgeMorphism& f, const std::vector<std::pair<int, int>>& s,
                      bool conjugate) {
  auto src = deligne_pieces(f.source, conjugate);
  auto tgt = deligne_pieces(f.target, conjugate);
  Subspace lhs = piece_sum_over(src, s, f.source.dim).image_under(f.matrix);
  Subspace image = Subspace::full(f.source.dim).image_under(f.matrix);
  Subspace rhs = intersect(image, piece_sum_over(tgt, s, f.target.dim));
  return lhs == rhs;
}

StrictnessReport check_strictness(const HodgeMorphism& f) {
  StrictnessReport rep;
  auto box = [&](const MixedHodge& v) {
    auto [wlo, whi] = v.w.support();
    auto [flo, fhi] = v.f.support();
    auto [blo, bhi] = v.fbar.support();
    return std::array<int, 4>{std::min(flo, blo) - 1, std::max(fhi, bhi) + 1,
                              wlo - 1, whi + 1};
  };
  auto b1 = box(f.source), b2 = box(f.target);
  int plo = std::min(b1[0], b2[0]), phi = std::max(b1[1], b2[1]);
  int nlo = std::min(b1[2], b2[2]), nhi = std::max(b1[3], b2[3]);
  std::vector<std::pair<int, int>> all;
  for (int p = plo; p <= phi; ++p)
    for (int n = nlo; n <= nhi; ++n) {
      std::vector<std::pair<int, int>> single{{p, n}};
      for (bool conj : {false, true}) {
        if (!strict_on_wf(f, single, conj)) {
          rep.ok = false;
          std::ostringstream os;
          os << (conj ? "conjugate " : "") << "W/F strictness fails at (p=" << p
             << ", n=" << n << ")";
          rep.failures.push_back(os.str());
        }
        if (!strict_on_pieces(f, single, conj)) {
          rep.ok = false;
          std::ostringstream os;
          os << (conj ? "conjugate " : "") << "splitting strictness fails at (p=" << p
             << ", q=" << n << ")";
          rep.failures.push_back(os.str());
        }
      }
      all.push_back({p, n});
    }
  for (bool conj : {false, true}) {
    if (!strict_on_wf(f, all, conj) || !strict_on_pieces(f, all, conj)) {
      rep.ok = false;
      rep.failures.push_back("strictness fails on the full index box");
    }
  }
  return rep;
}

std::pair<SubQuotient, SubQuotient> kernel_cokernel(const HodgeMorphism& f) {
  RepReport mrep = validate_hodge_morphism(f);
  if (!mrep.ok) throw std::invalid_argument("kernel_cokernel requires a valid morphism");
  if (!validate_mhs(f.source).ok || !validate_mhs(f.target).ok)
    throw std::invalid_argument("kernel_cokernel requires valid mixed Hodge structures");

  Subspace ker = kernel_of(f.matrix);
  SubQuotient kernel;
  kernel.object.dim = ker.dim();
  kernel.object.w = restrict_to(f.source.w, ker);
  kernel.object.f = restrict_to(f.source.f, ker);
  kernel.object.fbar = restrict_to(f.source.fbar, ker);
  Mat incl(f.source.dim, ker.dim());
  for (int j = 0; j < ker.dim(); ++j)
    for (int i = 0; i < f.source.dim; ++i) incl(i, j) = ker.basis()[j][i];
  kernel.map = std::move(incl);

  Subspace image = Subspace::full(f.source.dim).image_under(f.matrix);
  QuotientMap q = quotient_map(Subspace::full(f.target.dim), image);
  int cdim = static_cast<int>(q.complement.size());
  SubQuotient coker;
  coker.object.dim = cdim;
  coker.object.w = image_filtration(f.target.w, q.projection, cdim);
  coker.object.f = image_filtration(f.target.f, q.projection, cdim);
  coker.object.fbar = image_filtration(f.target.fbar, q.projection, cdim);
  coker.map = q.projection;
  return {std::move(kernel), std::move(coker)};
}

MixedHodge phi1(const PlecticRep& u) {
  if (u.g != 1) throw std::invalid_argument("phi1 requires g = 1");
  RepReport rep = validate_rep(u);
  if (!rep.ok) throw std::invalid_argument("phi1 requires a valid input: " + rep.summary());
  MixedHodge v;
  v.dim = u.dim;
  v.w = AscFiltration(u.dim);
  v.f = DescFiltration(u.dim);
  v.fbar = DescFiltration(u.dim);

  std::set<int> totals, ps, qs;
  for (const auto& [deg, sub] : u.pieces) {
    totals.insert(deg.p[0] + deg.q[0]);
    ps.insert(deg.p[0]);
    qs.insert(deg.q[0]);
  }
  if (totals.empty()) {
    if (u.dim == 0) return v;
    throw std::invalid_argument("nonzero space with no graded pieces");
  }
  for (int n : totals)
    v.w.set_step(n, u.piece_sum([&](const BiDegree& d) { return d.p[0] + d.q[0] <= n; }));
  Mat tinv = u.t[0].inverse();
  for (int p : ps) {
    Subspace high = u.piece_sum([&](const BiDegree& d) { return d.p[0] >= p; });
    v.f.set_step(p, high.image_under(u.t[0]));
  }
  v.f.set_step(*ps.begin() - 1, Subspace::full(u.dim));
  for (int q : qs) {
    Subspace high = u.piece_sum([&](const BiDegree& d) { return d.q[0] >= q; });
    v.fbar.set_step(q, high.image_under(tinv));
  }
  v.fbar.set_step(*qs.begin() - 1, Subspace::full(u.dim));
  v.w.normalize();
  v.f.normalize();
  v.fbar.normalize();
  return v;
}

Mat sqrt_unipotent(const Mat& s) {
  if (s.rows() != s.cols()) throw std::invalid_argument("sqrt of non-square matrix");
  int n = s.rows();
  Mat nil = s - Mat::identity(n);
  // Find the nilpotency order.
  std::vector<Mat> powers{Mat::identity(n)};
  int order = -1;
  for (int k = 1; k <= n; ++k) {
    powers.push_back(powers.back() * nil);
    if (powers.back().is_zero()) {
      order = k;
      break;
    }
  }
  if (order < 0) throw std::invalid_argument("matrix is not unipotent");
  Mat t(n, n);
  Rational coeff(1);  // binomial(1/2, k), built incrementally
  for (int k = 0; k < order; ++k) {
    if (k > 0) {
      // binom(1/2, k) = binom(1/2, k-1) * (1/2 - (k-1)) / k
      coeff *= Rational(1, 2) - Rational(k - 1);
      coeff /= Rational(k);
      coeff.canonicalize();
    }
    t = t + Scalar(coeff) * powers[k];
  }
  return t;
}

namespace {

// Matrix that decomposes along given pieces and projects every piece to its
// weight block: the splitting projection onto (+) Gr_n.
Mat decomposition_projection(const GradedWeights& dec,
                             const std::map<std::pair<int, int>, Subspace>& pieces,
                             int dim) {
  std::vector<Vec> cols_of_basis;  // images of piece basis vectors
  std::vector<Vec> basis;          // the piece basis vectors themselves
  for (const auto& [key, piece] : pieces) {
    int k = dec.block_index(key.first + key.second);
    if (k < 0) throw std::logic_error("splitting piece at a weight with zero graded piece");
    for (const Vec& r : piece.basis()) {
      basis.push_back(r);
      cols_of_basis.push_back(dec.embed(k, dec.blocks[k].projection.apply(r)));
    }
  }
  if (static_cast<int>(basis.size()) != dim)
    throw std::logic_error("splitting pieces do not form a basis");
  Mat m_basis(dim, dim), m_images(dec.total, dim);
  for (int j = 0; j < dim; ++j) {
    for (int i = 0; i < dim; ++i) m_basis(i, j) = basis[j][i];
    for (int i = 0; i < dec.total; ++i) m_images(i, j) = cols_of_basis[j][i];
  }
  return m_images * m_basis.inverse();
}

}  // namespace

Psi1Result psi1(const MixedHodge& v) {
  auto a = deligne_splitting(v, false);
  auto abar = deligne_splitting(v, true);
  Psi1Result out;
  out.dec = graded_weights(v.dim, v.w);
  out.rho = decomposition_projection(out.dec, a, v.dim);
  Mat rho_bar = decomposition_projection(out.dec, abar, v.dim);
  out.s = rho_bar * out.rho.inverse();
  Mat t = sqrt_unipotent(out.s);

  out.rep.g = 1;
  out.rep.dim = out.dec.total;
  for (const auto& [key, piece] : a) {
    int k = out.dec.block_index(key.first + key.second);
    BiDegree deg{{key.first}, {key.second}};
    out.rep.pieces.emplace(deg, piece.image_under(out.dec.block_map(k)));
  }
  out.rep.t.push_back(t);
  out.equivalence = t * out.rho;
  return out;
}

}  // namespace plectic
