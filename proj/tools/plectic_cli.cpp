#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "plectic/io.hpp"

using namespace plectic;
using nlohmann::json;

namespace {

constexpr int kExitValid = 0;
constexpr int kExitError = 1;
constexpr int kExitInvalid = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void emit(const json& payload, const std::string& format) {
  if (format == "table") {
    // Flat two-column rendering of the top-level fields.
    for (auto it = payload.begin(); it != payload.end(); ++it) {
      std::cout << it.key() << "\t";
      if (it.value().is_string())
        std::cout << it.value().get<std::string>();
      else
        std::cout << it.value().dump();
      std::cout << "\n";
    }
  } else {
    std::cout << payload.dump(2) << "\n";
  }
}

json subset_json(const std::vector<int>& I) { return json(I); }

json weak_report_json(const WeakReport& rep) {
  json out;
  out["valid"] = rep.ok;
  json conds = json::array();
  for (const WeakVerdict& v : rep.verdicts) {
    json c;
    c["I"] = subset_json(v.I);
    c["a"] = v.a;
    c["b"] = v.b;
    c["c"] = v.c;
    conds.push_back(std::move(c));
  }
  out["conditions"] = std::move(conds);
  json issues = json::array();
  for (const WeakConditionFailure& f : rep.failures) {
    json e;
    e["condition"] = std::string(1, f.condition);
    e["I"] = subset_json(f.I);
    e["weight"] = f.weight;
    if (!f.p.empty()) e["p"] = f.p;
    if (!f.q.empty()) e["q"] = f.q;
    e["what"] = f.what;
    issues.push_back(std::move(e));
  }
  out["issues"] = std::move(issues);
  json graded = json::object();
  for (const auto& [n, pure] : rep.graded_pure) graded[std::to_string(n)] = pure;
  out["graded_pure"] = std::move(graded);
  return out;
}

int run_validate(const std::string& path, bool force_real, const std::string& format) {
  Document doc = parse_document(read_file(path));
  if (force_real && !doc.has_sigma())
    throw std::invalid_argument("--real requires a document with a sigma field");
  bool use_real = force_real || doc.has_sigma();
  json out;
  out["kind"] = doc.kind;
  bool valid = true;
  json issues = json::array();

  auto add_rep_report = [&](const RepReport& rep) {
    if (!rep.ok) valid = false;
    for (const auto& v : rep.violations) issues.push_back(v.what);
  };

  if (doc.kind == "rep") {
    add_rep_report(validate_rep(doc.rep));
  } else if (doc.kind == "real-rep") {
    add_rep_report(validate_real(doc.real_rep()));
  } else if (doc.kind == "filtered") {
    for (const AscFiltration& f : doc.filtered.w)
      if (!f.validate().ok) {
        valid = false;
        issues.push_back("invalid ascending filtration");
      }
    for (const DescFiltration& f : doc.filtered.f)
      if (!f.validate().ok) {
        valid = false;
        issues.push_back("invalid descending filtration");
      }
    for (const DescFiltration& f : doc.filtered.fbar)
      if (!f.validate().ok) {
        valid = false;
        issues.push_back("invalid descending filtration");
      }
    if (use_real) add_rep_report(validate_real(doc.real_filtered()));
  } else if (doc.kind == "orth") {
    OrthReport rep = validate_orth(doc.filtered);
    if (!rep.ok) valid = false;
    for (const auto& f : rep.failures) {
      std::ostringstream os;
      os << f.what << " (mu=" << f.mu;
      if (f.nu) os << ", nu=" << f.nu << ", step " << f.step;
      os << ")";
      issues.push_back(os.str());
    }
    if (use_real) add_rep_report(validate_real(doc.real_filtered()));
  } else if (doc.kind == "weak" || doc.kind == "pmhs") {
    WeakReport rep = check_weak(doc.filtered);
    json wj = weak_report_json(rep);
    for (auto it = wj.begin(); it != wj.end(); ++it)
      if (it.key() != "valid") out[it.key()] = it.value();
    if (!rep.ok) {
      valid = false;
      for (const auto& f : rep.failures) {
        std::ostringstream os;
        os << "(" << f.condition << "_";
        if (f.I.empty())
          os << "{}";
        else {
          os << "{";
          for (std::size_t k = 0; k < f.I.size(); ++k) os << (k ? "," : "") << f.I[k];
          os << "}";
        }
        os << ") fails: " << f.what;
        issues.push_back(os.str());
      }
    }
    if (doc.kind == "pmhs" && rep.ok) {
      PmhsReport prep = check_pmhs(doc.filtered);
      out["subset_independent"] = prep.ok;
      if (!prep.ok) {
        valid = false;
        issues.push_back(prep.what);
      }
    }
    if (use_real) add_rep_report(validate_real(doc.real_filtered()));
  } else if (doc.kind == "complex") {
    add_rep_report(validate_complex(doc.complex));
  } else {
    throw std::invalid_argument("no validator for kind '" + doc.kind + "'");
  }
  out["valid"] = valid;
  out["issues"] = issues;
  emit(out, format);
  return valid ? kExitValid : kExitInvalid;
}

json pieces_json(const std::map<BiDegree, Subspace>& pieces) {
  json out = json::array();
  for (const auto& [deg, sub] : pieces) {
    json p;
    p["p"] = deg.p;
    p["q"] = deg.q;
    p["basis"] = subspace_to_json(sub);
    p["dim"] = sub.dim();
    out.push_back(std::move(p));
  }
  return out;
}

int run_splitting(const std::string& path, const std::vector<int>& I,
                  const std::string& format) {
  Document doc = parse_document(read_file(path));
  MultiFiltered v;
  if (doc.kind == "weak" || doc.kind == "pmhs") {
    v = doc.filtered;
  } else if (doc.kind == "orth") {
    v = total_weight(doc.filtered);
  } else {
    throw std::invalid_argument("splitting expects a weak, pmhs or orth document");
  }
  std::map<BiDegree, Subspace> pieces = plectic_splitting(v, I);
  json out;
  out["I"] = subset_json(I);
  out["pieces"] = pieces_json(pieces);
  emit(out, format);
  return kExitValid;
}

int run_convert(const std::string& path, const std::string& to,
                const std::string& format) {
  Document doc = parse_document(read_file(path));
  bool real = doc.has_sigma();
  Document out;
  auto to_orth = [&]() -> Document {
    if (doc.kind == "rep") return make_document(phi_g(doc.rep), "orth");
    if (doc.kind == "real-rep")
      return make_document(phi_real(doc.real_rep()), "orth");
    if (doc.kind == "orth") return doc;
    if (doc.kind == "pmhs") {
      PmhsReport rep = check_pmhs(doc.filtered);
      if (!rep.ok) throw std::invalid_argument("document is not subset independent");
      MultiFiltered p = partial_weights(doc.filtered, {});
      if (real) return make_document(RealMultiFiltered{p, *doc.sigma}, "orth");
      return make_document(p, "orth");
    }
    throw std::invalid_argument("cannot convert '" + doc.kind + "' to orth");
  };
  if (to == "orth") {
    out = to_orth();
  } else if (to == "rep") {
    if (doc.kind == "rep" || doc.kind == "real-rep") {
      out = doc;
    } else {
      Document orth = to_orth();
      if (orth.has_sigma()) {
        PsiRealResult res = psi_real(orth.real_filtered());
        out = make_document(res.rep);
      } else {
        out = make_document(psi_g(orth.filtered).rep);
      }
    }
  } else if (to == "pmhs") {
    Document orth = to_orth();
    MultiFiltered t = total_weight(orth.filtered);
    if (orth.has_sigma())
      out = make_document(RealMultiFiltered{t, *orth.sigma}, "pmhs");
    else
      out = make_document(t, "pmhs");
  } else {
    throw std::invalid_argument("convert target must be rep, orth or pmhs");
  }
  out.metadata = doc.metadata;
  std::cout << serialize_document(out);
  (void)format;
  return kExitValid;
}

int run_ext(const std::string& path, bool cocycles, const std::string& format) {
  Document doc = parse_document(read_file(path));
  RepComplex complex;
  if (doc.kind == "complex")
    complex = doc.complex;
  else if (doc.kind == "real-rep")
    complex = single_object_complex(doc.real_rep());
  else
    throw std::invalid_argument("ext expects a complex or real-rep document");
  Cohomology coh = ext_groups(complex);
  json out;
  for (const auto& [degree, dim] : coh.dims) out[std::to_string(degree)] = dim;
  if (cocycles) {
    json reps = json::object();
    for (const auto& [degree, vectors] : coh.representatives) {
      json list = json::array();
      for (const Vec& v : vectors) {
        json row = json::array();
        for (const Scalar& s : v) row.push_back(s.to_string());
        list.push_back(std::move(row));
      }
      reps[std::to_string(degree)] = std::move(list);
    }
    json wrapped;
    wrapped["dims"] = out;
    wrapped["cocycles"] = std::move(reps);
    emit(wrapped, format);
  } else {
    emit(out, format);
  }
  return kExitValid;
}

int run_pairwise(const std::string& op, const std::string& a_path,
                 const std::string& b_path) {
  Document a = parse_document(read_file(a_path));
  Document b = parse_document(read_file(b_path));
  bool real = a.has_sigma() && b.has_sigma();
  if (a.has_sigma() != b.has_sigma())
    throw std::invalid_argument(op + " needs both inputs real or both complex");
  Document out;
  if (a.kind == "rep" || a.kind == "real-rep") {
    if (real) {
      RealPlecticRep x = a.real_rep(), y = b.real_rep();
      if (op == "tensor") out = make_document(tensor(x, y));
      else if (op == "hom") out = make_document(internal_hom(x, y));
      else out = make_document(exterior(x, y));
    } else {
      if (op == "tensor") out = make_document(tensor(a.rep, b.rep));
      else if (op == "hom") out = make_document(internal_hom(a.rep, b.rep));
      else out = make_document(exterior(a.rep, b.rep));
    }
  } else if (a.kind == "pmhs" && b.kind == "pmhs") {
    if (op == "tensor") out = make_document(tensor_filtered(a.filtered, b.filtered), "pmhs");
    else if (op == "hom") out = make_document(hom_filtered(a.filtered, b.filtered), "pmhs");
    else throw std::invalid_argument("exterior is defined on rep documents");
  } else {
    throw std::invalid_argument(op + " expects rep or pmhs documents");
  }
  std::cout << serialize_document(out);
  return kExitValid;
}

int run_tate(const std::vector<int>& n, bool real) {
  Document out = real ? make_document(tate_real(n)) : make_document(tate(n));
  std::cout << serialize_document(out);
  return kExitValid;
}

int run_gamma(const std::string& path, int mu) {
  Document doc = parse_document(read_file(path));
  if (doc.kind != "real-rep")
    throw std::invalid_argument("gamma expects a real-rep document");
  RealPlecticRep out = gamma(doc.real_rep(), mu);
  std::cout << serialize_document(make_document(out));
  return kExitValid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact computations with plectic Hodge data"};
  app.require_subcommand(1);
  std::string format = "json";
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"json", "table"}));

  std::string path, path_b, to;
  std::vector<int> subset, tate_n;
  bool force_real = false, cocycles = false;
  int mu = 0;

  CLI::App* validate = app.add_subcommand("validate", "run the validator for a document");
  validate->add_option("file", path)->required();
  validate->add_flag("--real", force_real, "require and check the real structure");

  CLI::App* splitting = app.add_subcommand("splitting", "bigraded splitting pieces");
  splitting->add_option("file", path)->required();
  splitting->add_option("--I", subset, "subset of {1..g}")->delimiter(',');

  CLI::App* convert = app.add_subcommand("convert", "move between presentations");
  convert->add_option("file", path)->required();
  convert->add_option("--to", to, "target kind")
      ->required()
      ->check(CLI::IsMember({"rep", "orth", "pmhs"}));

  CLI::App* ext = app.add_subcommand("ext", "extension groups from the unit object");
  ext->add_option("file", path)->required();
  ext->add_flag("--cocycles", cocycles, "include representative cocycles");

  CLI::App* tensor_cmd = app.add_subcommand("tensor", "tensor product of two documents");
  tensor_cmd->add_option("a", path)->required();
  tensor_cmd->add_option("b", path_b)->required();

  CLI::App* hom_cmd = app.add_subcommand("hom", "internal hom of two documents");
  hom_cmd->add_option("a", path)->required();
  hom_cmd->add_option("b", path_b)->required();

  CLI::App* exterior_cmd = app.add_subcommand("exterior", "exterior product");
  exterior_cmd->add_option("a", path)->required();
  exterior_cmd->add_option("b", path_b)->required();

  CLI::App* tate_cmd = app.add_subcommand("tate", "emit a twist object");
  tate_cmd->add_option("--n", tate_n, "twist vector")->required()->delimiter(',');
  bool tate_real_flag = false;
  tate_cmd->add_flag("--real", tate_real_flag, "emit the real form");

  CLI::App* gamma_cmd = app.add_subcommand("gamma", "fixed part under the tail factors");
  gamma_cmd->add_option("file", path)->required();
  gamma_cmd->add_option("--mu", mu, "target rank")->required();

  // Let --format appear after the subcommand as well.
  for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) return run_validate(path, force_real, format);
    if (splitting->parsed()) return run_splitting(path, subset, format);
    if (convert->parsed()) return run_convert(path, to, format);
    if (ext->parsed()) return run_ext(path, cocycles, format);
    if (tensor_cmd->parsed()) return run_pairwise("tensor", path, path_b);
    if (hom_cmd->parsed()) return run_pairwise("hom", path, path_b);
    if (exterior_cmd->parsed()) return run_pairwise("exterior", path, path_b);
    if (tate_cmd->parsed()) return run_tate(tate_n, tate_real_flag);
    if (gamma_cmd->parsed()) return run_gamma(path, mu);
  } catch (const std::exception& e) {
    json err;
    err["error"] = e.what();
    std::cerr << err.dump(2) << "\n";
    return kExitError;
  }
  return kExitError;
}
