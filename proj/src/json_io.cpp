#include "nctrace/json_io.hpp"

#include <json.hpp>

#include "nctrace/errors.hpp"
#include "nctrace/parser.hpp"

namespace nctrace {

using Json = nlohmann::ordered_json;

namespace {

Json parse_document(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::Parse, std::string("invalid JSON: ") + e.what());
  }
}

[[noreturn]] void schema_error(const std::string& what) { throw Error(ErrorCode::InvalidArgument, "JSON schema: " + what); }

const Json& field(const Json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) schema_error(std::string("missing field \"") + key + "\"");
  return obj.at(key);
}

int int_field(const Json& obj, const char* key) {
  const Json& v = field(obj, key);
  if (!v.is_number_integer()) schema_error(std::string("field \"") + key + "\" must be an integer");
  return v.get<int>();
}

double number(const Json& v, const char* what) {
  if (!v.is_number()) schema_error(std::string(what) + " must be a number");
  return v.get<double>();
}

cplx entry_value(const Json& v) {
  if (v.is_number()) return v.get<double>();
  if (!v.is_array() || v.size() != 2) schema_error("matrix entry must be [re, im] or a number");
  return {number(v[0], "real part"), number(v[1], "imaginary part")};
}

Json complex_pair(cplx v) { return Json::array({v.real(), v.imag()}); }

Json flat_matrix(const CMatrix& m) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) out.push_back(complex_pair(m(i, j)));
  }
  return out;
}

Json word_json(const Word& w) {
  Json out = Json::array();
  for (auto l : w) out.push_back(static_cast<int>(l));
  return out;
}

Word word_from_json(const Json& v) {
  if (!v.is_array()) schema_error("word must be an array of variable indices");
  Word w;
  for (const auto& l : v) {
    if (!l.is_number_integer()) schema_error("word letters must be integers");
    const int letter = l.get<int>();
    if (letter < 1 || letter > Word::kMaxLetter) schema_error("word letter out of range");
    w.push_back(letter);
  }
  return w;
}

Json theta_json(const MomentSequence& t) {
  Json out = Json::array();
  const auto words = t.words();
  const auto values = t.values();
  for (std::size_t i = 0; i < words.size(); ++i) {
    Json e;
    e["word"] = word_json(words[i]);
    e["re"] = values[i].real();
    e["im"] = values[i].imag();
    out.push_back(std::move(e));
  }
  return out;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace

MatrixTuple tuple_from_json(std::string_view text) {
  const Json doc = parse_document(text);
  const int n = int_field(doc, "n");
  const int size = int_field(doc, "N");
  if (n < 1 || size < 1) schema_error("\"n\" and \"N\" must be positive");
  const Json& mats = field(doc, "matrices");
  if (!mats.is_array() || static_cast<int>(mats.size()) != n) {
    throw Error(ErrorCode::DimensionMismatch, "expected " + std::to_string(n) + " matrices");
  }
  std::vector<CMatrix> out;
  for (const auto& m : mats) {
    if (!m.is_array() || m.size() != static_cast<std::size_t>(size) * static_cast<std::size_t>(size)) {
      throw Error(ErrorCode::DimensionMismatch, "each matrix needs N*N = " + std::to_string(size * size) + " entries");
    }
    CMatrix x(size, size);
    for (int i = 0; i < size; ++i) {
      for (int j = 0; j < size; ++j) x(i, j) = entry_value(m[static_cast<std::size_t>(i * size + j)]);
    }
    out.push_back(std::move(x));
  }
  return MatrixTuple::from_hermitian(std::move(out), 1e-9);
}

std::string tuple_to_json(const MatrixTuple& x) {
  Json doc;
  doc["n"] = x.n();
  doc["N"] = x.size();
  doc["matrices"] = Json::array();
  for (const auto& m : x.matrices()) doc["matrices"].push_back(flat_matrix(m));
  return dump(doc);
}

std::string moments_to_json(const MomentSequence& t) {
  Json doc;
  doc["n"] = t.nvars();
  doc["degree"] = t.max_degree();
  doc["theta"] = theta_json(t);
  return dump(doc);
}

MomentSequence moments_from_json(std::string_view text) {
  const Json doc = parse_document(text);
  const int degree = int_field(doc, "degree");
  const Json& theta = field(doc, "theta");
  if (!theta.is_array()) schema_error("\"theta\" must be an array");
  std::vector<std::pair<Word, cplx>> entries;
  int n = 0;
  for (const auto& e : theta) {
    Word w = word_from_json(field(e, "word"));
    n = std::max(n, static_cast<int>(w.max_letter()));
    const cplx v{number(field(e, "re"), "\"re\""), e.contains("im") ? number(e.at("im"), "\"im\"") : 0.0};
    entries.emplace_back(std::move(w), v);
  }
  if (doc.contains("n")) {
    const int declared = int_field(doc, "n");
    if (declared < n) throw Error(ErrorCode::DimensionMismatch, "a word uses a letter beyond \"n\"");
    n = declared;
  }
  if (n < 1) schema_error("cannot determine the number of variables");
  MomentSequence t(n, degree);
  for (const auto& [w, v] : entries) t.set(w, v);
  return t;
}

std::string certificate_to_json(const Certificate& cert) {
  Json doc;
  doc["degree"] = cert.degree;
  doc["factors"] = Json::array();
  for (const auto& b : cert.factors) doc["factors"].push_back(format_poly(b));
  doc["residual_l1"] = cert.residual_l1;
  return dump(doc);
}

Certificate certificate_from_json(std::string_view text, int nvars) {
  const Json doc = parse_document(text);
  Certificate cert;
  cert.degree = int_field(doc, "degree");
  const Json& factors = field(doc, "factors");
  if (!factors.is_array()) schema_error("\"factors\" must be an array");
  for (const auto& f : factors) {
    if (!f.is_string()) schema_error("factors must be polynomial strings");
    cert.factors.push_back(parse_poly(f.get<std::string>(), nvars));
  }
  cert.residual = NCPoly(nvars);
  if (doc.contains("residual_l1")) cert.residual_l1 = number(doc.at("residual_l1"), "\"residual_l1\"");
  return cert;
}

std::string certify_report_to_json(const CertifyResult& result) {
  Json doc;
  doc["status"] = to_string(result.status);
  doc["degree"] = result.degree;
  doc["solver"] = to_string(result.solve.status);
  doc["iterations"] = result.solve.iterations;
  doc["gap"] = result.solve.gap;
  doc["structurally_infeasible"] = result.solve.structurally_infeasible;
  if (!result.message.empty()) doc["message"] = result.message;
  return dump(doc);
}

std::string witness_to_json(const DualWitness& w) {
  Json doc;
  doc["degree"] = w.theta.max_degree();
  doc["R"] = w.radius;
  doc["value"] = w.value;
  doc["n"] = w.theta.nvars();
  doc["theta"] = theta_json(w.theta);
  return dump(doc);
}

std::string falsify_to_json(const FalsifyResult& result) {
  Json doc;
  doc["falsified"] = result.tuple.has_value();
  doc["evaluated"] = result.evaluated;
  if (result.tuple) {
    doc["trace"] = result.trace;
    doc["source"] = result.source;
    doc["tuple"] = Json::parse(tuple_to_json(*result.tuple));
  }
  return dump(doc);
}

std::string gns_to_json(const GnsModel& model) {
  Json doc;
  doc["degree"] = model.degree;
  doc["n"] = model.nvars;
  doc["rank"] = model.rank;
  doc["basis"] = Json::array();
  for (const auto& w : model.basis) doc["basis"].push_back(word_json(w));
  doc["z0"] = Json::array();
  for (Eigen::Index i = 0; i < model.z0.size(); ++i) doc["z0"].push_back(complex_pair(model.z0(i)));
  doc["operators"] = Json::array();
  for (const auto& y : model.y) doc["operators"].push_back(flat_matrix(y));
  const GnsDiagnostics& d = model.diagnostics;
  Json diag;
  diag["rank_tol"] = model.rank_tol;
  diag["min_eigenvalue"] = d.min_eigenvalue;
  diag["max_eigenvalue"] = d.max_eigenvalue;
  diag["reconstruction_error"] = d.reconstruction_error;
  diag["cyclic_violation"] = d.cyclic_violation;
  diag["shift_domain_rank"] = d.shift_domain_rank;
  diag["hermitian_defect"] = d.hermitian_defect;
  diag["shift_residual"] = d.shift_residual;
  doc["diagnostics"] = std::move(diag);
  return dump(doc);
}

}  // namespace nctrace
