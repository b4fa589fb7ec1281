#include "plectic/rep.hpp"

#include <sstream>
#include <stdexcept>

namespace plectic {

namespace {

std::string degree_string(const BiDegree& d) {
  std::ostringstream os;
  os << "p=(";
  for (std::size_t k = 0; k < d.p.size(); ++k) os << (k ? "," : "") << d.p[k];
  os << "),q=(";
  for (std::size_t k = 0; k < d.q.size(); ++k) os << (k ? "," : "") << d.q[k];
  os << ")";
  return os.str();
}

void check_shape(const PlecticRep& u) {
  if (u.g < 0 || u.dim < 0) throw std::invalid_argument("negative g or dim");
  for (const auto& [deg, sub] : u.pieces) {
    if (static_cast<int>(deg.p.size()) != u.g || static_cast<int>(deg.q.size()) != u.g)
      throw std::invalid_argument("bidegree length does not match g");
    if (sub.ambient() != u.dim)
      throw std::invalid_argument("piece ambient does not match dim");
  }
  if (static_cast<int>(u.t.size()) != u.g)
    throw std::invalid_argument("expected one automorphism per index");
  for (const Mat& m : u.t)
    if (m.rows() != u.dim || m.cols() != u.dim)
      throw std::invalid_argument("automorphism has wrong shape");
}

}  // namespace

std::string RepReport::summary() const {
  if (ok) return "valid";
  std::ostringstream os;
  for (const auto& v : violations) {
    os << v.what;
    if (v.at) os << " [" << degree_string(*v.at) << "]";
    os << "; ";
  }
  return os.str();
}

RepReport validate_rep(const PlecticRep& u) {
  check_shape(u);
  RepReport rep;

  // Direct sum: the stored pieces must be independent and exhaust the space.
  RrefBuilder all(u.dim);
  int total = 0;
  for (const auto& [deg, sub] : u.pieces) {
    if (sub.is_zero()) continue;
    total += sub.dim();
    for (const Vec& r : sub.basis())
      if (!all.absorb(r)) {
        rep.ok = false;
        rep.violations.push_back({"graded pieces are not in direct sum", 0, deg});
        break;
      }
    if (!rep.ok) break;
  }
  if (rep.ok && (total != u.dim || all.rank() != u.dim)) {
    rep.ok = false;
    rep.violations.push_back({"graded pieces do not span the ambient space", 0, {}});
  }

  for (int mu = 0; mu < u.g; ++mu)
    for (int nu = mu + 1; nu < u.g; ++nu)
      if (u.t[mu] * u.t[nu] != u.t[nu] * u.t[mu]) {
        rep.ok = false;
        rep.violations.push_back(
            {"automorphisms do not commute", mu + 1, std::nullopt});
      }

  // (t_mu - 1) must map each piece into the sum of pieces with the mu-th
  // bidegree strictly lowered and all other components unchanged.
  for (int mu = 0; mu < u.g; ++mu) {
    Mat n = u.t[mu] - Mat::identity(u.dim);
    for (const auto& [deg, sub] : u.pieces) {
      Subspace admissible = u.piece_sum([&](const BiDegree& d) {
        for (int nu = 0; nu < u.g; ++nu) {
          if (nu == mu) continue;
          if (d.p[nu] != deg.p[nu] || d.q[nu] != deg.q[nu]) return false;
        }
        return d.p[mu] < deg.p[mu] && d.q[mu] < deg.q[mu];
      });
      for (const Vec& r : sub.basis()) {
        if (!admissible.contains(n.apply(r))) {
          rep.ok = false;
          rep.violations.push_back(
              {"bidegree-lowering condition violated", mu + 1, deg});
          return rep;  // report only the first violated triple
        }
      }
    }
  }
  return rep;
}

RepReport validate_morphism(const RepMorphism& f) {
  RepReport rep;
  if (f.source.g != f.target.g) {
    rep.ok = false;
    rep.violations.push_back({"source and target have different g", 0, {}});
    return rep;
  }
  if (f.matrix.rows() != f.target.dim || f.matrix.cols() != f.source.dim) {
    rep.ok = false;
    rep.violations.push_back({"morphism matrix has wrong shape", 0, {}});
    return rep;
  }
  for (const auto& [deg, sub] : f.source.pieces) {
    const Subspace* tgt = f.target.piece(deg);
    for (const Vec& r : sub.basis()) {
      Vec image = f.matrix.apply(r);
      bool good = tgt ? tgt->contains(image) : plectic::is_zero(image);
      if (!good) {
        rep.ok = false;
        rep.violations.push_back({"morphism does not preserve the grading", 0, deg});
      }
    }
  }
  for (int mu = 0; mu < f.source.g; ++mu)
    if (f.matrix * f.source.t[mu] != f.target.t[mu] * f.matrix) {
      rep.ok = false;
      rep.violations.push_back(
          {"morphism does not commute with the automorphisms", mu + 1, {}});
    }
  return rep;
}

PlecticRep tensor(const PlecticRep& t, const PlecticRep& u) {
  check_shape(t);
  check_shape(u);
  if (t.g != u.g) throw std::invalid_argument("tensor requires equal g");
  PlecticRep out;
  out.g = t.g;
  out.dim = t.dim * u.dim;
  std::map<BiDegree, RrefBuilder> acc;
  for (const auto& [dt, st] : t.pieces)
    for (const auto& [du, su] : u.pieces) {
      BiDegree key;
      key.p.resize(out.g);
      key.q.resize(out.g);
      for (int k = 0; k < out.g; ++k) {
        key.p[k] = dt.p[k] + du.p[k];
        key.q[k] = dt.q[k] + du.q[k];
      }
      auto [it, _] = acc.try_emplace(key, out.dim);
      for (const Vec& a : st.basis())
        for (const Vec& b : su.basis()) it->second.absorb(kron(a, b));
    }
  for (auto& [key, builder] : acc) {
    Subspace s = builder.take();
    if (!s.is_zero()) out.pieces.emplace(key, std::move(s));
  }
  for (int mu = 0; mu < out.g; ++mu) out.t.push_back(t.t[mu].kron(u.t[mu]));
  return out;
}

Mat flat_hom_map(const Mat& post, const Mat& pre) {
  return post.kron(pre.transpose());
}

PlecticRep internal_hom(const PlecticRep& t, const PlecticRep& u) {
  check_shape(t);
  check_shape(u);
  if (t.g != u.g) throw std::invalid_argument("internal_hom requires equal g");
  PlecticRep out;
  out.g = t.g;
  out.dim = t.dim * u.dim;

  // Graded bases of source and target, tagged with their bidegrees.
  std::vector<std::pair<BiDegree, Vec>> tb, ub;
  for (const auto& [deg, sub] : t.pieces)
    for (const Vec& r : sub.basis()) tb.emplace_back(deg, r);
  for (const auto& [deg, sub] : u.pieces)
    for (const Vec& r : sub.basis()) ub.emplace_back(deg, r);
  if (static_cast<int>(tb.size()) != t.dim || static_cast<int>(ub.size()) != u.dim)
    throw std::invalid_argument("internal_hom requires honest gradings");

  // Columns of c_t are the graded basis vectors of the source.
  Mat c_t(t.dim, t.dim), c_u(u.dim, u.dim);
  for (int j = 0; j < t.dim; ++j)
    for (int i = 0; i < t.dim; ++i) c_t(i, j) = tb[j].second[i];
  for (int j = 0; j < u.dim; ++j)
    for (int i = 0; i < u.dim; ++i) c_u(i, j) = ub[j].second[i];
  Mat c_t_inv = c_t.inverse();

  // The map sending u-basis i to the functional of t-basis j has matrix
  // c_u . E_ij . c_t^{-1}; its flattening spans the piece at the degree
  // difference.
  std::map<BiDegree, RrefBuilder> acc;
  for (int i = 0; i < u.dim; ++i)
    for (int j = 0; j < t.dim; ++j) {
      BiDegree key;
      key.p.resize(out.g);
      key.q.resize(out.g);
      for (int k = 0; k < out.g; ++k) {
        key.p[k] = ub[i].first.p[k] - tb[j].first.p[k];
        key.q[k] = ub[i].first.q[k] - tb[j].first.q[k];
      }
      Vec flat(out.dim);
      for (int a = 0; a < u.dim; ++a) {
        if (c_u(a, i).is_zero()) continue;
        for (int b = 0; b < t.dim; ++b) flat[a * t.dim + b] = c_u(a, i) * c_t_inv(j, b);
      }
      auto [it, _] = acc.try_emplace(key, out.dim);
      it->second.absorb(std::move(flat));
    }
  for (auto& [key, builder] : acc) {
    Subspace s = builder.take();
    if (!s.is_zero()) out.pieces.emplace(key, std::move(s));
  }
  for (int mu = 0; mu < out.g; ++mu)
    out.t.push_back(flat_hom_map(u.t[mu], t.t[mu].inverse()));
  return out;
}

PlecticRep exterior(const PlecticRep& t, const PlecticRep& u) {
  check_shape(t);
  check_shape(u);
  PlecticRep out;
  out.g = t.g + u.g;
  out.dim = t.dim * u.dim;
  for (const auto& [dt, st] : t.pieces)
    for (const auto& [du, su] : u.pieces) {
      BiDegree key;
      key.p = dt.p;
      key.p.insert(key.p.end(), du.p.begin(), du.p.end());
      key.q = dt.q;
      key.q.insert(key.q.end(), du.q.begin(), du.q.end());
      RrefBuilder b(out.dim);
      for (const Vec& a : st.basis())
        for (const Vec& c : su.basis()) b.absorb(kron(a, c));
      Subspace s = b.take();
      if (!s.is_zero()) out.pieces.emplace(key, std::move(s));
    }
  Mat it = Mat::identity(t.dim), iu = Mat::identity(u.dim);
  for (int mu = 0; mu < t.g; ++mu) out.t.push_back(t.t[mu].kron(iu));
  for (int mu = 0; mu < u.g; ++mu) out.t.push_back(it.kron(u.t[mu]));
  return out;
}

PlecticRep tate(const std::vector<int>& n) {
  PlecticRep out;
  out.g = static_cast<int>(n.size());
  out.dim = 1;
  BiDegree key;
  for (int v : n) {
    key.p.push_back(-v);
    key.q.push_back(-v);
  }
  out.pieces.emplace(key, Subspace::full(1));
  for (int mu = 0; mu < out.g; ++mu) out.t.push_back(Mat::identity(1));
  return out;
}

PlecticRep include_rep(const PlecticRep& u, int g) {
  check_shape(u);
  if (g < u.g) throw std::invalid_argument("include_rep target rank is smaller than source");
  PlecticRep out;
  out.g = g;
  out.dim = u.dim;
  for (const auto& [deg, sub] : u.pieces) {
    BiDegree key = deg;
    key.p.resize(g, 0);
    key.q.resize(g, 0);
    out.pieces.emplace(key, sub);
  }
  out.t = u.t;
  for (int mu = u.g; mu < g; ++mu) out.t.push_back(Mat::identity(u.dim));
  return out;
}

PlecticRep direct_sum(const PlecticRep& a, const PlecticRep& b) {
  check_shape(a);
  check_shape(b);
  if (a.g != b.g) throw std::invalid_argument("direct_sum requires equal g");
  PlecticRep out;
  out.g = a.g;
  out.dim = a.dim + b.dim;
  std::map<BiDegree, RrefBuilder> acc;
  for (const auto& [deg, sub] : a.pieces) {
    auto [it, _] = acc.try_emplace(deg, out.dim);
    for (const Vec& r : sub.basis()) it->second.absorb(concat(r, Vec(b.dim)));
  }
  for (const auto& [deg, sub] : b.pieces) {
    auto [it, _] = acc.try_emplace(deg, out.dim);
    for (const Vec& r : sub.basis()) it->second.absorb(concat(Vec(a.dim), r));
  }
  for (auto& [key, builder] : acc) {
    Subspace s = builder.take();
    if (!s.is_zero()) out.pieces.emplace(key, std::move(s));
  }
  for (int mu = 0; mu < out.g; ++mu) {
    Mat t(out.dim, out.dim);
    for (int i = 0; i < a.dim; ++i)
      for (int j = 0; j < a.dim; ++j) t(i, j) = a.t[mu](i, j);
    for (int i = 0; i < b.dim; ++i)
      for (int j = 0; j < b.dim; ++j) t(a.dim + i, a.dim + j) = b.t[mu](i, j);
    out.t.push_back(std::move(t));
  }
  return out;
}

PlecticRep change_basis(const PlecticRep& u, const Mat& c) {
  check_shape(u);
  if (c.rows() != u.dim || c.cols() != u.dim)
    throw std::invalid_argument("basis change has wrong shape");
  Mat cinv = c.inverse();
  PlecticRep out;
  out.g = u.g;
  out.dim = u.dim;
  for (const auto& [deg, sub] : u.pieces) out.pieces.emplace(deg, sub.image_under(c));
  for (const Mat& m : u.t) out.t.push_back(c * m * cinv);
  return out;
}

}  // namespace plectic
