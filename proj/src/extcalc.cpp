#include "plectic/extcalc.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace plectic {

namespace {

std::string multi_index_label(const std::vector<int>& m, int degree) {
  std::ostringstream os;
  os << "m=(";
  for (std::size_t k = 0; k < m.size(); ++k) os << (k ? "," : "") << m[k];
  os << "),deg=" << degree;
  return os.str();
}

// All 0/1 vectors of length g in lexicographic order.
std::vector<std::vector<int>> binary_indices(int g) {
  std::vector<std::vector<int>> out;
  for (int mask = 0; mask < (1 << g); ++mask) {
    std::vector<int> m(g);
    for (int k = 0; k < g; ++k) m[k] = (mask >> (g - 1 - k)) & 1;
    out.push_back(std::move(m));
  }
  std::sort(out.begin(), out.end());
  return out;
}

Subspace complex_to_rational(int complex_dim, const std::vector<Vec>& vectors) {
  return rational_span(complex_dim, vectors);
}

// Kernel of t_{nu} - 1 together with the zero-bidegree cut for index nu,
// intersected over nu in (mu, g]; a complex subspace of the ambient space.
Subspace gamma_domain(const RealPlecticRep& u, int mu) {
  Subspace z = Subspace::full(u.rep.dim);
  for (int nu = mu + 1; nu <= u.rep.g; ++nu) {
    z = intersect(z, a_space(u, nu, 0));
    z = intersect(z, kernel_of(u.rep.t[nu - 1] - Mat::identity(u.rep.dim)));
    if (z.is_zero()) break;
  }
  return z;
}

}  // namespace

RepComplex single_object_complex(RealPlecticRep u, int degree) {
  RepComplex c;
  c.lo = degree;
  c.objects.push_back(std::move(u));
  return c;
}

RepReport validate_complex(const RepComplex& c) {
  RepReport rep;
  if (c.objects.empty()) return rep;
  int g = c.objects.front().rep.g;
  for (const RealPlecticRep& obj : c.objects) {
    if (obj.rep.g != g) {
      rep.ok = false;
      rep.violations.push_back({"objects have different ranks", 0, {}});
      return rep;
    }
    RepReport orep = validate_real(obj);
    if (!orep.ok) {
      rep.ok = false;
      rep.violations.insert(rep.violations.end(), orep.violations.begin(),
                            orep.violations.end());
    }
  }
  if (c.d.size() + 1 != c.objects.size()) {
    rep.ok = false;
    rep.violations.push_back({"wrong number of differentials", 0, {}});
    return rep;
  }
  for (std::size_t k = 0; k < c.d.size(); ++k) {
    RepReport mrep = validate_real_morphism(c.objects[k], c.objects[k + 1], c.d[k]);
    if (!mrep.ok) {
      rep.ok = false;
      rep.violations.push_back(
          {"differential " + std::to_string(c.lo + static_cast<int>(k)) +
               " is not a morphism",
           0, {}});
    }
  }
  for (std::size_t k = 0; k + 1 < c.d.size(); ++k)
    if (!(c.d[k + 1] * c.d[k]).is_zero()) {
      rep.ok = false;
      rep.violations.push_back({"differentials do not compose to zero", 0, {}});
    }
  return rep;
}

Subspace a_space(const RealPlecticRep& u, int mu, int m) {
  if (mu < 1 || mu > u.rep.g) throw std::invalid_argument("a_space index out of range");
  if (m != 0 && m != 1) throw std::invalid_argument("a_space exponent must be 0 or 1");
  return u.rep.piece_sum([&](const BiDegree& d) {
    if (m == 0) return d.p[mu - 1] == 0 && d.q[mu - 1] == 0;
    return d.p[mu - 1] < 0 && d.q[mu - 1] < 0;
  });
}

Subspace a_multi(const RealPlecticRep& u, const std::vector<int>& m) {
  if (static_cast<int>(m.size()) != u.rep.g)
    throw std::invalid_argument("a_multi index length does not match g");
  Subspace z = Subspace::full(u.rep.dim);
  for (int mu = 1; mu <= u.rep.g && !z.is_zero(); ++mu)
    z = intersect(z, a_space(u, mu, m[mu - 1]));
  if (z.is_zero()) return Subspace::zero(2 * u.rep.dim);

  // The twisted conjugation (-t_1)^{m_1} ... (-t_g)^{m_g} . sigma.
  Mat twist = u.sigma;
  for (int mu = 0; mu < u.rep.g; ++mu)
    if (m[mu] == 1) twist = (Scalar(-1) * u.rep.t[mu]) * twist;
  AntiLinearMap tau{twist};

  // Restrict to z and take the rational fixed space there.
  int zd = z.dim();
  Mat restricted(zd, zd);
  for (int c = 0; c < zd; ++c) {
    Vec coords = z.coordinates_of(tau.apply(z.basis()[c]));
    for (int r = 0; r < zd; ++r) restricted(r, c) = coords[r];
  }
  FixedSpace fs = fixed_space(AntiLinearMap{restricted});
  std::vector<Vec> ambient_vectors;
  for (const Vec& coords : fs.complex_basis) {
    Vec v(u.rep.dim);
    for (int k = 0; k < zd; ++k) v = v + coords[k] * z.basis()[k];
    ambient_vectors.push_back(std::move(v));
  }
  return complex_to_rational(u.rep.dim, ambient_vectors);
}

Mat rational_matrix_between(const Subspace& src, const Subspace& tgt,
                            const Mat& complex_map) {
  Mat out(tgt.dim(), src.dim());
  for (int c = 0; c < src.dim(); ++c) {
    Vec v = complexify(src.basis()[c]);
    Vec w = complex_map.apply(v);
    Vec coords = tgt.coordinates_of(realify(w));
    for (int r = 0; r < tgt.dim(); ++r) out(r, c) = coords[r];
  }
  return out;
}

CochainComplex lambda_complex(const RepComplex& c) {
  RepReport rep = validate_complex(c);
  if (!rep.ok)
    throw std::invalid_argument("lambda_complex requires a valid complex: " + rep.summary());
  CochainComplex out;
  if (c.objects.empty()) return out;
  int g = c.objects.front().rep.g;
  std::vector<std::vector<int>> indices = binary_indices(g);

  // Fixed rational subspaces per (complex degree, twist index).
  std::map<std::pair<int, std::vector<int>>, Subspace> spaces;
  for (int k = c.lo; k <= c.hi(); ++k)
    for (const std::vector<int>& m : indices)
      spaces.emplace(std::make_pair(k, m), a_multi(*c.object_at(k), m));

  struct Block {
    std::vector<int> m;
    int k = 0;
    int offset = 0;
  };
  std::map<int, std::vector<Block>> blocks;  // per total degree, lex ordered
  out.lo = c.lo;
  int hi_total = c.hi() + g;
  for (int total = c.lo; total <= hi_total; ++total) {
    std::vector<Block> bs;
    int offset = 0;
    for (const std::vector<int>& m : indices) {
      int weight = 0;
      for (int v : m) weight += v;
      int k = total - weight;
      if (k < c.lo || k > c.hi()) continue;
      Block b;
      b.m = m;
      b.k = k;
      b.offset = offset;
      offset += spaces.at({k, m}).dim();
      bs.push_back(std::move(b));
    }
    out.dims.push_back(offset);
    std::vector<std::string> labels;
    for (const Block& b : bs)
      for (int i = 0; i < spaces.at({b.k, b.m}).dim(); ++i)
        labels.push_back(multi_index_label(b.m, b.k) + "#" + std::to_string(i));
    out.labels.push_back(std::move(labels));
    blocks.emplace(total, std::move(bs));
  }

  for (int total = c.lo; total < hi_total; ++total) {
    const std::vector<Block>& src_blocks = blocks.at(total);
    const std::vector<Block>& tgt_blocks = blocks.at(total + 1);
    Mat d(out.dims[total + 1 - c.lo], out.dims[total - c.lo]);
    auto find_target = [&](const std::vector<int>& m, int k) -> const Block* {
      for (const Block& b : tgt_blocks)
        if (b.m == m && b.k == k) return &b;
      return nullptr;
    };
    for (const Block& src : src_blocks) {
      const Subspace& dom = spaces.at({src.k, src.m});
      if (dom.dim() == 0) continue;
      const RealPlecticRep& obj = *c.object_at(src.k);
      int sign_acc = 1;
      for (int j = 0; j < g; ++j) {
        if (src.m[j] == 0) {
          std::vector<int> m2 = src.m;
          m2[j] = 1;
          const Block* tgt = find_target(m2, src.k);
          if (tgt) {
            const Subspace& cod = spaces.at({src.k, m2});
            Mat part = rational_matrix_between(
                dom, cod, obj.rep.t[j] - Mat::identity(obj.rep.dim));
            for (int r = 0; r < part.rows(); ++r)
              for (int s = 0; s < part.cols(); ++s)
                d(tgt->offset + r, src.offset + s) =
                    Scalar(sign_acc) * part(r, s);
          }
        }
        if (src.m[j] == 1) sign_acc = -sign_acc;
      }
      if (src.k < c.hi()) {
        const Block* tgt = find_target(src.m, src.k + 1);
        if (tgt) {
          const Subspace& cod = spaces.at({src.k + 1, src.m});
          Mat part = rational_matrix_between(dom, cod, c.d[src.k - c.lo]);
          for (int r = 0; r < part.rows(); ++r)
            for (int s = 0; s < part.cols(); ++s)
              d(tgt->offset + r, src.offset + s) = Scalar(sign_acc) * part(r, s);
        }
      }
    }
    out.d.push_back(std::move(d));
  }
  for (std::size_t k = 0; k + 1 < out.d.size(); ++k)
    if (!(out.d[k + 1] * out.d[k]).is_zero())
      throw std::logic_error("total complex differential does not square to zero");
  return out;
}

Cohomology cohomology(const CochainComplex& c) {
  for (std::size_t k = 0; k + 1 < c.d.size(); ++k)
    if (!(c.d[k + 1] * c.d[k]).is_zero())
      throw std::invalid_argument("cohomology requires d . d = 0");
  Cohomology out;
  for (int degree = c.lo; degree <= c.hi(); ++degree) {
    int k = degree - c.lo;
    Subspace cocycles = (k < static_cast<int>(c.d.size()))
                            ? kernel_of(c.d[k])
                            : Subspace::full(c.dims[k]);
    Subspace boundaries =
        (k > 0) ? Subspace::full(c.dims[k - 1]).image_under(c.d[k - 1])
                : Subspace::zero(c.dims[k]);
    QuotientMap q = quotient_map(cocycles, boundaries);
    out.dims[degree] = static_cast<int>(q.complement.size());
    out.representatives[degree] = q.complement;
  }
  return out;
}

Cohomology ext_groups(const RepComplex& c) { return cohomology(lambda_complex(c)); }

RealPlecticRep gamma(const RealPlecticRep& u, int mu) {
  if (mu < 0 || mu > u.rep.g) throw std::invalid_argument("gamma index out of range");
  Subspace z = gamma_domain(u, mu);
  int zd = z.dim();
  RealPlecticRep out;
  out.rep.g = mu;
  out.rep.dim = zd;
  for (const auto& [deg, piece] : u.rep.pieces) {
    bool tail_zero = true;
    for (int nu = mu; nu < u.rep.g; ++nu)
      if (deg.p[nu] != 0 || deg.q[nu] != 0) {
        tail_zero = false;
        break;
      }
    if (!tail_zero) continue;
    Subspace cut = intersect(piece, z);
    if (cut.is_zero()) continue;
    std::vector<Vec> rows;
    for (const Vec& r : cut.basis()) rows.push_back(z.coordinates_of(r));
    BiDegree head;
    head.p.assign(deg.p.begin(), deg.p.begin() + mu);
    head.q.assign(deg.q.begin(), deg.q.begin() + mu);
    Subspace existing = out.rep.piece(head) ? *out.rep.piece(head) : Subspace::zero(zd);
    out.rep.pieces[head] = sum(existing, Subspace::span(zd, rows));
  }
  for (int nu = 0; nu < mu; ++nu) {
    Mat t(zd, zd);
    for (int col = 0; col < zd; ++col) {
      Vec coords = z.coordinates_of(u.rep.t[nu].apply(z.basis()[col]));
      for (int r = 0; r < zd; ++r) t(r, col) = coords[r];
    }
    out.rep.t.push_back(std::move(t));
  }
  AntiLinearMap sigma = u.structure();
  Mat s(zd, zd);
  for (int col = 0; col < zd; ++col) {
    Vec coords = z.coordinates_of(sigma.apply(z.basis()[col]));
    for (int r = 0; r < zd; ++r) s(r, col) = coords[r];
  }
  out.sigma = std::move(s);
  return out;
}

FixedSpace gamma0(const RealPlecticRep& u) {
  RealPlecticRep g0 = gamma(u, 0);
  FixedSpace inner = fixed_space(g0.structure());
  // Map the fixed basis back to ambient coordinates.
  Subspace z = gamma_domain(u, 0);
  std::vector<Vec> ambient;
  for (const Vec& coords : inner.complex_basis) {
    Vec v(u.rep.dim);
    for (int k = 0; k < z.dim(); ++k) v = v + coords[k] * z.basis()[k];
    ambient.push_back(std::move(v));
  }
  FixedSpace out;
  out.complex_dim = u.rep.dim;
  out.realified = complex_to_rational(u.rep.dim, ambient);
  for (const Vec& r : out.realified.basis()) out.complex_basis.push_back(complexify(r));
  return out;
}

namespace {

Subspace b_space(const RealPlecticRep& u, int level, const std::vector<int>& m) {
  int g = u.rep.g;
  if (level == g) return a_multi(u, m);
  std::vector<int> m0 = m, m1 = m;
  m0.push_back(0);
  m1.push_back(1);
  Subspace src = b_space(u, level + 1, m0);
  Subspace tgt = b_space(u, level + 1, m1);
  Mat map = u.rep.t[level] - Mat::identity(u.rep.dim);
  Mat rat = rational_matrix_between(src, tgt, map);
  Subspace coords_kernel = kernel_of(rat);
  // Back to ambient realified coordinates.
  RrefBuilder acc(2 * u.rep.dim);
  for (const Vec& coords : coords_kernel.basis()) {
    Vec v(2 * u.rep.dim);
    for (int k = 0; k < src.dim(); ++k) v = v + coords[k] * src.basis()[k];
    acc.absorb(v);
  }
  return acc.take();
}

}  // namespace

BcSpaces bc_spaces(const RealPlecticRep& u, int mu, const std::vector<int>& m) {
  if (mu < 0 || mu > u.rep.g) throw std::invalid_argument("bc level out of range");
  if (static_cast<int>(m.size()) != mu)
    throw std::invalid_argument("bc index length must equal the level");
  for (int v : m)
    if (v != 0 && v != 1) throw std::invalid_argument("bc indices must be 0 or 1");
  BcSpaces out;
  out.b = b_space(u, mu, m);
  if (mu == u.rep.g) {
    out.c_target = Subspace::zero(2 * u.rep.dim);
    out.c_image = Subspace::zero(2 * u.rep.dim);
    out.c_dim = 0;
    return out;
  }
  std::vector<int> m0 = m, m1 = m;
  m0.push_back(0);
  m1.push_back(1);
  Subspace src = b_space(u, mu + 1, m0);
  Subspace tgt = b_space(u, mu + 1, m1);
  Mat map = u.rep.t[mu] - Mat::identity(u.rep.dim);
  RrefBuilder image(2 * u.rep.dim);
  for (const Vec& r : src.basis()) {
    Vec w = map.apply(complexify(r));
    image.absorb(realify(w));
  }
  out.c_image = image.take();
  out.c_target = tgt;
  out.c_dim = tgt.dim() - out.c_image.dim();
  return out;
}

RepComplex hom_complex(const RepComplex& t, const RepComplex& u) {
  if (t.objects.empty() || u.objects.empty())
    throw std::invalid_argument("hom_complex requires nonempty complexes");
  if (t.objects.front().rep.g != u.objects.front().rep.g)
    throw std::invalid_argument("hom_complex requires equal ranks");
  int g = t.objects.front().rep.g;
  int nlo = u.lo - t.hi(), nhi = u.hi() - t.lo;

  RepComplex out;
  out.lo = nlo;
  // Per degree: the summand index range and offsets.
  struct Layout {
    std::vector<int> is;       // source degrees i with both ends present
    std::vector<int> offsets;  // flat offsets of the summands
    int dim = 0;
  };
  std::vector<Layout> layouts;
  for (int n = nlo; n <= nhi; ++n) {
    Layout lay;
    RealPlecticRep acc;
    acc.rep.g = g;
    acc.rep.dim = 0;
    acc.sigma = Mat(0, 0);
    bool first = true;
    for (int i = t.lo; i <= t.hi(); ++i) {
      if (!u.object_at(i + n)) continue;
      RealPlecticRep h = internal_hom(*t.object_at(i), *u.object_at(i + n));
      lay.is.push_back(i);
      lay.offsets.push_back(lay.dim);
      lay.dim += h.rep.dim;
      acc = first ? std::move(h) : direct_sum(acc, h);
      first = false;
    }
    if (first) {
      // Zero object at this degree.
      for (int mu = 0; mu < g; ++mu) acc.rep.t.push_back(Mat(0, 0));
    }
    out.objects.push_back(std::move(acc));
    layouts.push_back(std::move(lay));
  }

  for (int n = nlo; n < nhi; ++n) {
    const Layout& src = layouts[n - nlo];
    const Layout& tgt = layouts[n + 1 - nlo];
    Mat d(out.objects[n + 1 - nlo].rep.dim, out.objects[n - nlo].rep.dim);
    int sign = (n % 2 == 0) ? 1 : -1;  // (-1)^n
    // Post-composition with d_U: summand i of degree n to summand i of n + 1.
    for (std::size_t a = 0; a < src.is.size(); ++a) {
      int i = src.is[a];
      const RealPlecticRep& ti = *t.object_at(i);
      auto pos = std::find(tgt.is.begin(), tgt.is.end(), i);
      if (pos == tgt.is.end()) continue;
      int bo = tgt.offsets[pos - tgt.is.begin()];
      Mat blockmap = flat_hom_map(u.d[i + n - u.lo], Mat::identity(ti.rep.dim));
      for (int r = 0; r < blockmap.rows(); ++r)
        for (int s = 0; s < blockmap.cols(); ++s)
          d(bo + r, src.offsets[a] + s) = blockmap(r, s);
    }
    // Pre-composition with d_T: summand i+1 of degree n to summand i of n + 1.
    for (std::size_t b = 0; b < tgt.is.size(); ++b) {
      int i = tgt.is[b];
      if (!t.object_at(i + 1)) continue;
      auto spos = std::find(src.is.begin(), src.is.end(), i + 1);
      if (spos == src.is.end()) continue;
      int so = src.offsets[spos - src.is.begin()];
      const RealPlecticRep& ui1 = *u.object_at(i + 1 + n);
      Mat blockmap = flat_hom_map(Mat::identity(ui1.rep.dim), t.d[i - t.lo]);
      for (int r = 0; r < blockmap.rows(); ++r)
        for (int s = 0; s < blockmap.cols(); ++s)
          d(tgt.offsets[b] + r, so + s) = Scalar(-sign) * blockmap(r, s);
    }
    out.d.push_back(std::move(d));
  }
  return out;
}

int homotopy_hom(const RepComplex& t, const RepComplex& u, int m) {
  RepComplex h = hom_complex(t, u);
  CochainComplex fixed;
  fixed.lo = h.lo;
  std::vector<Subspace> zs;
  for (const RealPlecticRep& obj : h.objects) {
    FixedSpace fs = gamma0(obj);
    zs.push_back(fs.realified);
    fixed.dims.push_back(fs.realified.dim());
    fixed.labels.push_back({});
  }
  for (std::size_t k = 0; k + 1 < h.objects.size(); ++k)
    fixed.d.push_back(rational_matrix_between(zs[k], zs[k + 1], h.d[k]));
  Cohomology coh = cohomology(fixed);
  auto it = coh.dims.find(m);
  return it == coh.dims.end() ? 0 : it->second;
}

}  // namespace plectic
