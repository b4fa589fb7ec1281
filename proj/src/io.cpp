#include "plectic/io.hpp"

#include <set>
#include <stdexcept>

namespace plectic {

using nlohmann::json;

namespace {

void expect_keys(const json& j, const std::set<std::string>& allowed,
                 const std::string& what) {
  if (!j.is_object()) throw std::invalid_argument(what + " must be a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key()))
      throw std::invalid_argument("unknown field '" + it.key() + "' in " + what);
}

std::vector<int> int_vector_from_json(const json& j, const std::string& what) {
  if (!j.is_array()) throw std::invalid_argument(what + " must be an array");
  std::vector<int> out;
  for (const json& v : j) {
    if (!v.is_number_integer()) throw std::invalid_argument(what + " must hold integers");
    out.push_back(v.get<int>());
  }
  return out;
}

Vec vector_from_json(const json& j, int length) {
  if (!j.is_array()) throw std::invalid_argument("vector must be a JSON array");
  if (length >= 0 && static_cast<int>(j.size()) != length)
    throw std::invalid_argument("vector has wrong length");
  Vec v;
  for (const json& e : j) v.push_back(scalar_from_json(e));
  return v;
}

json vector_to_json(const Vec& v) {
  json out = json::array();
  for (const Scalar& s : v) out.push_back(scalar_to_json(s));
  return out;
}

}  // namespace

json scalar_to_json(const Scalar& s) { return s.to_string(); }

Scalar scalar_from_json(const json& j) {
  if (j.is_number_integer()) return Scalar(static_cast<long>(j.get<long long>()));
  if (!j.is_string()) throw std::invalid_argument("scalar must be a string");
  return Scalar::parse(j.get<std::string>());
}

json matrix_to_json(const Mat& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) rows.push_back(vector_to_json(m.row(i)));
  return rows;
}

Mat matrix_from_json(const json& j, int rows, int cols) {
  if (!j.is_array()) throw std::invalid_argument("matrix must be an array of rows");
  std::vector<Vec> r;
  for (const json& row : j) r.push_back(vector_from_json(row, -1));
  for (const Vec& row : r)
    if (row.size() != r.front().size())
      throw std::invalid_argument("matrix has ragged rows");
  if (rows >= 0 && static_cast<int>(r.size()) != rows)
    throw std::invalid_argument("matrix has wrong row count");
  if (cols >= 0 && !r.empty() && static_cast<int>(r.front().size()) != cols)
    throw std::invalid_argument("matrix has wrong column count");
  if (r.empty() && cols > 0 && rows > 0)
    throw std::invalid_argument("matrix has wrong row count");
  Mat out = Mat::from_rows(r);
  if (r.empty() && cols >= 0 && rows >= 0) out = Mat::zero(rows, cols);
  return out;
}

json subspace_to_json(const Subspace& s) {
  json rows = json::array();
  for (const Vec& r : s.basis()) rows.push_back(vector_to_json(r));
  return rows;
}

Subspace subspace_from_json(const json& j, int ambient) {
  if (!j.is_array()) throw std::invalid_argument("subspace must be an array of rows");
  std::vector<Vec> rows;
  for (const json& row : j) rows.push_back(vector_from_json(row, ambient));
  return Subspace::span(ambient, rows);
}

namespace {

template <typename F>
json filtration_to_json_impl(const F& f) {
  json out = json::object();
  F copy = f;
  copy.normalize();
  for (const auto& [n, s] : copy.steps()) out[std::to_string(n)] = subspace_to_json(s);
  return out;
}

int parse_step_index(const std::string& key) {
  std::size_t pos = 0;
  int n = 0;
  try {
    n = std::stoi(key, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("filtration step index '" + key + "' is not an integer");
  }
  if (pos != key.size())
    throw std::invalid_argument("filtration step index '" + key + "' is not an integer");
  return n;
}

}  // namespace

json asc_filtration_to_json(const AscFiltration& f) { return filtration_to_json_impl(f); }

AscFiltration asc_filtration_from_json(const json& j, int ambient) {
  if (!j.is_object()) throw std::invalid_argument("filtration must be a JSON object");
  AscFiltration f(ambient);
  for (auto it = j.begin(); it != j.end(); ++it)
    f.set_step(parse_step_index(it.key()), subspace_from_json(it.value(), ambient));
  return f;
}

json desc_filtration_to_json(const DescFiltration& f) { return filtration_to_json_impl(f); }

DescFiltration desc_filtration_from_json(const json& j, int ambient) {
  if (!j.is_object()) throw std::invalid_argument("filtration must be a JSON object");
  DescFiltration f(ambient);
  for (auto it = j.begin(); it != j.end(); ++it)
    f.set_step(parse_step_index(it.key()), subspace_from_json(it.value(), ambient));
  return f;
}

RealPlecticRep Document::real_rep() const {
  if (!sigma) throw std::invalid_argument("document carries no real structure");
  return RealPlecticRep{rep, *sigma};
}

RealMultiFiltered Document::real_filtered() const {
  if (!sigma) throw std::invalid_argument("document carries no real structure");
  return RealMultiFiltered{filtered, *sigma};
}

Document make_document(const PlecticRep& u) {
  Document d;
  d.kind = "rep";
  d.rep = u;
  return d;
}

Document make_document(const RealPlecticRep& u) {
  Document d;
  d.kind = "real-rep";
  d.rep = u.rep;
  d.sigma = u.sigma;
  return d;
}

Document make_document(const MultiFiltered& v, const std::string& kind) {
  Document d;
  d.kind = kind;
  d.filtered = v;
  return d;
}

Document make_document(const RealMultiFiltered& v, const std::string& kind) {
  Document d;
  d.kind = kind;
  d.filtered = v.v;
  d.sigma = v.sigma;
  return d;
}

Document make_document(const RepComplex& c) {
  Document d;
  d.kind = "complex";
  d.complex = c;
  return d;
}

namespace {

json rep_payload(const PlecticRep& u) {
  json pieces = json::array();
  for (const auto& [deg, sub] : u.pieces) {
    json piece;
    piece["p"] = deg.p;
    piece["q"] = deg.q;
    piece["basis"] = subspace_to_json(sub);
    pieces.push_back(std::move(piece));
  }
  json t = json::array();
  for (const Mat& m : u.t) t.push_back(matrix_to_json(m));
  json out;
  out["g"] = u.g;
  out["dim"] = u.dim;
  out["pieces"] = std::move(pieces);
  out["t"] = std::move(t);
  return out;
}

PlecticRep rep_from_payload(const json& j) {
  PlecticRep u;
  u.g = j.at("g").get<int>();
  u.dim = j.at("dim").get<int>();
  if (u.g < 0 || u.dim < 0) throw std::invalid_argument("negative g or dim");
  for (const json& piece : j.at("pieces")) {
    expect_keys(piece, {"p", "q", "basis"}, "piece");
    BiDegree deg;
    deg.p = int_vector_from_json(piece.at("p"), "piece index p");
    deg.q = int_vector_from_json(piece.at("q"), "piece index q");
    if (static_cast<int>(deg.p.size()) != u.g || static_cast<int>(deg.q.size()) != u.g)
      throw std::invalid_argument("piece index length does not match g");
    Subspace s = subspace_from_json(piece.at("basis"), u.dim);
    if (u.pieces.count(deg)) throw std::invalid_argument("duplicate piece bidegree");
    if (!s.is_zero()) u.pieces.emplace(std::move(deg), std::move(s));
  }
  const json& ts = j.at("t");
  if (static_cast<int>(ts.size()) != u.g)
    throw std::invalid_argument("expected one automorphism per index");
  for (const json& m : ts) u.t.push_back(matrix_from_json(m, u.dim, u.dim));
  return u;
}

json filtered_payload(const MultiFiltered& v) {
  json w = json::array(), f = json::array(), fbar = json::array();
  for (const AscFiltration& x : v.w) w.push_back(asc_filtration_to_json(x));
  for (const DescFiltration& x : v.f) f.push_back(desc_filtration_to_json(x));
  for (const DescFiltration& x : v.fbar) fbar.push_back(desc_filtration_to_json(x));
  json out;
  out["g"] = v.m();
  out["dim"] = v.dim;
  out["W"] = std::move(w);
  out["F"] = std::move(f);
  out["Fbar"] = std::move(fbar);
  return out;
}

MultiFiltered filtered_from_payload(const json& j) {
  MultiFiltered v;
  v.dim = j.at("dim").get<int>();
  if (v.dim < 0) throw std::invalid_argument("negative dim");
  for (const json& x : j.at("W")) v.w.push_back(asc_filtration_from_json(x, v.dim));
  for (const json& x : j.at("F")) v.f.push_back(desc_filtration_from_json(x, v.dim));
  for (const json& x : j.at("Fbar"))
    v.fbar.push_back(desc_filtration_from_json(x, v.dim));
  int g = j.at("g").get<int>();
  if (g != v.m() || v.f.size() != v.fbar.size())
    throw std::invalid_argument("filtration counts do not match g");
  return v;
}

void check_filtered_shape(const Document& d) {
  const MultiFiltered& v = d.filtered;
  if (d.kind == "weak" || d.kind == "pmhs") {
    if (v.l() != 1)
      throw std::invalid_argument(d.kind + " documents need exactly one weight filtration");
  } else if (d.kind == "orth") {
    if (v.l() != v.m())
      throw std::invalid_argument("orth documents need one weight filtration per index");
  }
}

}  // namespace

std::string serialize_document(const Document& doc) {
  json out;
  out["kind"] = doc.kind;
  if (doc.kind == "rep" || doc.kind == "real-rep") {
    json payload = rep_payload(doc.rep);
    for (auto it = payload.begin(); it != payload.end(); ++it) out[it.key()] = it.value();
    if (doc.kind == "real-rep") out["sigma"] = matrix_to_json(*doc.sigma);
  } else if (doc.kind == "filtered" || doc.kind == "orth" || doc.kind == "weak" ||
             doc.kind == "pmhs") {
    json payload = filtered_payload(doc.filtered);
    for (auto it = payload.begin(); it != payload.end(); ++it) out[it.key()] = it.value();
    if (doc.sigma) out["sigma"] = matrix_to_json(*doc.sigma);
  } else if (doc.kind == "complex") {
    out["g"] = doc.complex.objects.empty() ? 0 : doc.complex.objects.front().rep.g;
    out["lo"] = doc.complex.lo;
    json objs = json::array();
    for (const RealPlecticRep& obj : doc.complex.objects) {
      json payload = rep_payload(obj.rep);
      payload["sigma"] = matrix_to_json(obj.sigma);
      objs.push_back(std::move(payload));
    }
    out["objects"] = std::move(objs);
    json ds = json::array();
    for (const Mat& m : doc.complex.d) ds.push_back(matrix_to_json(m));
    out["d"] = std::move(ds);
  } else {
    throw std::invalid_argument("unknown document kind '" + doc.kind + "'");
  }
  if (!doc.metadata.is_null()) out["metadata"] = doc.metadata;
  return out.dump(2) + "\n";
}

Document parse_document(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
    throw std::invalid_argument("document needs a string 'kind' field");
  Document d;
  d.kind = j.at("kind").get<std::string>();
  if (j.contains("metadata")) d.metadata = j.at("metadata");

  if (d.kind == "rep" || d.kind == "real-rep") {
    std::set<std::string> keys{"kind", "g", "dim", "pieces", "t", "metadata"};
    if (d.kind == "real-rep") keys.insert("sigma");
    expect_keys(j, keys, "document");
    d.rep = rep_from_payload(j);
    if (d.kind == "real-rep")
      d.sigma = matrix_from_json(j.at("sigma"), d.rep.dim, d.rep.dim);
  } else if (d.kind == "filtered" || d.kind == "orth" || d.kind == "weak" ||
             d.kind == "pmhs") {
    expect_keys(j, {"kind", "g", "dim", "W", "F", "Fbar", "sigma", "metadata"},
                "document");
    d.filtered = filtered_from_payload(j);
    if (j.contains("sigma"))
      d.sigma = matrix_from_json(j.at("sigma"), d.filtered.dim, d.filtered.dim);
    check_filtered_shape(d);
  } else if (d.kind == "complex") {
    expect_keys(j, {"kind", "g", "lo", "objects", "d", "metadata"}, "document");
    d.complex.lo = j.at("lo").get<int>();
    int g = j.at("g").get<int>();
    for (const json& obj : j.at("objects")) {
      expect_keys(obj, {"g", "dim", "pieces", "t", "sigma"}, "complex object");
      RealPlecticRep r;
      r.rep = rep_from_payload(obj);
      r.sigma = matrix_from_json(obj.at("sigma"), r.rep.dim, r.rep.dim);
      if (r.rep.g != g) throw std::invalid_argument("complex object rank mismatch");
      d.complex.objects.push_back(std::move(r));
    }
    if (d.complex.objects.empty())
      throw std::invalid_argument("complex documents need at least one object");
    const json& ds = j.at("d");
    if (ds.size() + 1 != d.complex.objects.size())
      throw std::invalid_argument("wrong number of differentials");
    for (std::size_t k = 0; k < ds.size(); ++k)
      d.complex.d.push_back(matrix_from_json(ds[k], d.complex.objects[k + 1].rep.dim,
                                             d.complex.objects[k].rep.dim));
  } else {
    throw std::invalid_argument("unknown document kind '" + d.kind + "'");
  }
  return d;
}

}  // namespace plectic
