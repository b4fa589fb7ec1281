#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "plectic/extcalc.hpp"

namespace plectic {

/// One serialized object.  `kind` selects the payload: "rep" and "real-rep"
/// use `rep` (+ sigma), "filtered"/"orth"/"weak"/"pmhs" use `filtered`
/// (+ optional sigma), "complex" uses `complex`.
struct Document {
  std::string kind;
  PlecticRep rep;
  MultiFiltered filtered;
  RepComplex complex;
  std::optional<Mat> sigma;
  nlohmann::json metadata;  // free-form, preserved verbatim

  bool has_sigma() const { return sigma.has_value(); }
  RealPlecticRep real_rep() const;
  RealMultiFiltered real_filtered() const;
};

Document make_document(const PlecticRep& u);
Document make_document(const RealPlecticRep& u);
Document make_document(const MultiFiltered& v, const std::string& kind);
Document make_document(const RealMultiFiltered& v, const std::string& kind);
Document make_document(const RepComplex& c);

/// Strict parser: unknown fields, ragged matrices and malformed scalars are
/// rejected with std::invalid_argument.
Document parse_document(const std::string& text);

/// Canonical serialization: sorted keys, pieces in lexicographic bidegree
/// order, two-space indentation.  parse(serialize(x)) round-trips.
std::string serialize_document(const Document& doc);

nlohmann::json scalar_to_json(const Scalar& s);
Scalar scalar_from_json(const nlohmann::json& j);
nlohmann::json matrix_to_json(const Mat& m);
Mat matrix_from_json(const nlohmann::json& j, int rows = -1, int cols = -1);
nlohmann::json subspace_to_json(const Subspace& s);
Subspace subspace_from_json(const nlohmann::json& j, int ambient);
nlohmann::json asc_filtration_to_json(const AscFiltration& f);
AscFiltration asc_filtration_from_json(const nlohmann::json& j, int ambient);
nlohmann::json desc_filtration_to_json(const DescFiltration& f);
DescFiltration desc_filtration_from_json(const nlohmann::json& j, int ambient);

}  // namespace plectic
