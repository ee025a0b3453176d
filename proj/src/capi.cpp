#include "nctrace/nctrace.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <json.hpp>
#include <new>
#include <string>

#include "nctrace/errors.hpp"
#include "nctrace/gns.hpp"
#include "nctrace/json_io.hpp"
#include "nctrace/moments.hpp"
#include "nctrace/ncpoly.hpp"
#include "nctrace/parser.hpp"
#include "nctrace/sos.hpp"

struct nct_poly {
  nctrace::NCPoly value;
};
struct nct_tuple {
  nctrace::MatrixTuple value;
};
struct nct_moments {
  nctrace::MomentSequence value;
};
struct nct_gns {
  nctrace::GnsModel value;
};

namespace {

thread_local std::string last_error;

nct_status map_code(nctrace::ErrorCode code) {
  using nctrace::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument: return NCT_ERR_INVALID_ARGUMENT;
    case ErrorCode::Parse: return NCT_ERR_PARSE;
    case ErrorCode::NotSymmetric: return NCT_ERR_NOT_SYMMETRIC;
    case ErrorCode::DimensionMismatch: return NCT_ERR_DIMENSION;
    case ErrorCode::NotHermitian: return NCT_ERR_NOT_HERMITIAN;
    case ErrorCode::Degree: return NCT_ERR_DEGREE;
    case ErrorCode::InconsistentConstraints: return NCT_ERR_INCONSISTENT;
    case ErrorCode::NotPsd: return NCT_ERR_NOT_PSD;
    case ErrorCode::Solver: return NCT_ERR_SOLVER;
    case ErrorCode::Io: return NCT_ERR_IO;
  }
  return NCT_ERR_INTERNAL;
}

template <class F>
nct_status guard(F&& body) {
  try {
    body();
    return NCT_OK;
  } catch (const nctrace::Error& e) {
    last_error = e.what();
    return map_code(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return NCT_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return NCT_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown failure";
    return NCT_ERR_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw nctrace::Error(nctrace::ErrorCode::InvalidArgument, what);
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* nct_version(void) { return "1.0.0"; }

const char* nct_status_string(nct_status status) {
  switch (status) {
    case NCT_OK: return "ok";
    case NCT_ERR_INVALID_ARGUMENT: return "invalid argument";
    case NCT_ERR_PARSE: return "parse error";
    case NCT_ERR_NOT_SYMMETRIC: return "not self-adjoint";
    case NCT_ERR_DIMENSION: return "dimension mismatch";
    case NCT_ERR_NOT_HERMITIAN: return "not hermitian";
    case NCT_ERR_DEGREE: return "degree error";
    case NCT_ERR_INCONSISTENT: return "inconsistent constraints";
    case NCT_ERR_NOT_PSD: return "not positive semidefinite";
    case NCT_ERR_SOLVER: return "solver failure";
    case NCT_ERR_IO: return "i/o error";
    case NCT_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* nct_last_error(void) { return last_error.c_str(); }

void nct_string_free(char* s) { std::free(s); }

nct_status nct_poly_parse(const char* text, int nvars, nct_poly** out) {
  return guard([&] {
    require(text != nullptr && out != nullptr, "nct_poly_parse: null argument");
    *out = nullptr;
    nctrace::NCPoly p = nvars > 0 ? nctrace::parse_poly(text, nvars) : nctrace::parse_poly_infer(text);
    *out = new nct_poly{std::move(p)};
  });
}

void nct_poly_free(nct_poly* p) { delete p; }

int nct_poly_nvars(const nct_poly* p) { return p ? p->value.nvars() : 0; }

int nct_poly_degree(const nct_poly* p) { return p ? p->value.degree() : 0; }

nct_status nct_poly_format(const nct_poly* p, char** out) {
  return guard([&] {
    require(p != nullptr && out != nullptr, "nct_poly_format: null argument");
    *out = copy_string(nctrace::format_poly(p->value));
  });
}

nct_status nct_poly_star(const nct_poly* a, const nct_poly* b, nct_poly** out) {
  return guard([&] {
    require(a != nullptr && b != nullptr && out != nullptr, "nct_poly_star: null argument");
    *out = new nct_poly{nctrace::star_product(a->value, b->value)};
  });
}

nct_status nct_poly_involute(const nct_poly* p, nct_poly** out) {
  return guard([&] {
    require(p != nullptr && out != nullptr, "nct_poly_involute: null argument");
    *out = new nct_poly{nctrace::involute_poly(p->value)};
  });
}

nct_status nct_poly_cyclic_reduce(const nct_poly* p, nct_poly** out) {
  return guard([&] {
    require(p != nullptr && out != nullptr, "nct_poly_cyclic_reduce: null argument");
    *out = new nct_poly{nctrace::cyclic_reduce(p->value)};
  });
}

nct_status nct_poly_r_norm(const nct_poly* p, double radius, double* out) {
  return guard([&] {
    require(p != nullptr && out != nullptr, "nct_poly_r_norm: null argument");
    *out = nctrace::r_norm(p->value, radius);
  });
}

nct_status nct_poly_is_symmetric(const nct_poly* p, double tol, int* out) {
  return guard([&] {
    require(p != nullptr && out != nullptr, "nct_poly_is_symmetric: null argument");
    *out = nctrace::is_symmetric(p->value, tol) ? 1 : 0;
  });
}

nct_status nct_poly_trace(const nct_poly* p, const nct_tuple* x, double* re, double* im) {
  return guard([&] {
    require(p != nullptr && x != nullptr && re != nullptr && im != nullptr, "nct_poly_trace: null argument");
    if (p->value.nvars() > x->value.n()) {
      throw nctrace::Error(nctrace::ErrorCode::DimensionMismatch, "tuple has fewer matrices than variables");
    }
    const nctrace::cplx t = nctrace::normalized_trace(nctrace::eval(p->value, x->value));
    *re = t.real();
    *im = t.imag();
  });
}

nct_status nct_tuple_from_json(const char* json, nct_tuple** out) {
  return guard([&] {
    require(json != nullptr && out != nullptr, "nct_tuple_from_json: null argument");
    *out = nullptr;
    *out = new nct_tuple{nctrace::tuple_from_json(json)};
  });
}

nct_status nct_tuple_to_json(const nct_tuple* x, char** out) {
  return guard([&] {
    require(x != nullptr && out != nullptr, "nct_tuple_to_json: null argument");
    *out = copy_string(nctrace::tuple_to_json(x->value));
  });
}

void nct_tuple_free(nct_tuple* x) { delete x; }

int nct_tuple_nvars(const nct_tuple* x) { return x ? x->value.n() : 0; }

int nct_tuple_size(const nct_tuple* x) { return x ? x->value.size() : 0; }

double nct_tuple_max_norm(const nct_tuple* x) { return x ? x->value.max_norm() : 0.0; }

nct_status nct_moments_from_tuple(const nct_tuple* x, int max_degree, nct_moments** out) {
  return guard([&] {
    require(x != nullptr && out != nullptr, "nct_moments_from_tuple: null argument");
    *out = new nct_moments{nctrace::moment_sequence(x->value, max_degree)};
  });
}

nct_status nct_moments_from_json(const char* json, nct_moments** out) {
  return guard([&] {
    require(json != nullptr && out != nullptr, "nct_moments_from_json: null argument");
    *out = nullptr;
    *out = new nct_moments{nctrace::moments_from_json(json)};
  });
}

nct_status nct_moments_to_json(const nct_moments* t, char** out) {
  return guard([&] {
    require(t != nullptr && out != nullptr, "nct_moments_to_json: null argument");
    *out = copy_string(nctrace::moments_to_json(t->value));
  });
}

void nct_moments_free(nct_moments* t) { delete t; }

int nct_moments_max_degree(const nct_moments* t) { return t ? t->value.max_degree() : -1; }

nct_status nct_moments_check_w(const nct_moments* t, double tol, int* pass, char** report_json) {
  return guard([&] {
    require(t != nullptr && pass != nullptr, "nct_moments_check_w: null argument");
    const nctrace::WMembershipReport r = nctrace::check_w_membership(t->value, tol);
    *pass = r.pass() ? 1 : 0;
    if (report_json != nullptr) {
      nlohmann::ordered_json doc;
      doc["pass"] = r.pass();
      doc["cyclic_ok"] = r.cyclic_ok;
      doc["cyclic_worst"] = r.cyclic_worst;
      doc["conjugate_ok"] = r.conjugate_ok;
      doc["conjugate_worst"] = r.conjugate_worst;
      doc["normalization_error"] = r.normalization_error;
      doc["growth_radius"] = r.growth_radius;
      *report_json = copy_string(doc.dump(2) + "\n");
    }
  });
}

nct_status nct_moments_psd(const nct_moments* t, int degree, double tol, int* psd, double* min_eigenvalue) {
  return guard([&] {
    require(t != nullptr && psd != nullptr, "nct_moments_psd: null argument");
    const nctrace::PsdReport r = nctrace::psd_check(nctrace::moment_matrix(t->value, degree), tol);
    *psd = r.psd ? 1 : 0;
    if (min_eigenvalue != nullptr) *min_eigenvalue = r.min_eigenvalue;
  });
}

nct_status nct_pair(const nct_poly* p, const nct_moments* t, double* re, double* im) {
  return guard([&] {
    require(p != nullptr && t != nullptr && re != nullptr && im != nullptr, "nct_pair: null argument");
    const nctrace::cplx v = nctrace::pair(p->value, t->value);
    *re = v.real();
    *im = v.imag();
  });
}

nct_status nct_certify(const nct_poly* p, int degree, double tol, int* outcome, char** json) {
  return guard([&] {
    require(p != nullptr && outcome != nullptr && json != nullptr, "nct_certify: null argument");
    const int d = degree < 0 ? nctrace::default_degree(p->value) : degree;
    const nctrace::CertifyResult r = nctrace::certify_sos(p->value, d, tol);
    switch (r.status) {
      case nctrace::CertifyStatus::Certified:
        *outcome = NCT_CERTIFIED;
        *json = copy_string(nctrace::certificate_to_json(*r.certificate));
        return;
      case nctrace::CertifyStatus::Infeasible: *outcome = NCT_INFEASIBLE; break;
      case nctrace::CertifyStatus::SolverFailure: *outcome = NCT_SOLVER_FAILURE; break;
    }
    *json = copy_string(nctrace::certify_report_to_json(r));
  });
}

nct_status nct_verify_certificate_json(const nct_poly* p, const char* certificate_json, double* residual) {
  return guard([&] {
    require(p != nullptr && certificate_json != nullptr && residual != nullptr,
            "nct_verify_certificate_json: null argument");
    const nctrace::Certificate cert = nctrace::certificate_from_json(certificate_json, p->value.nvars());
    *residual = nctrace::verify_certificate(p->value, cert.factors);
  });
}

nct_status nct_dual_witness(const nct_poly* p, int degree, double radius, double tol, int* found, double* optimum,
                            char** json) {
  return guard([&] {
    require(p != nullptr && found != nullptr && json != nullptr, "nct_dual_witness: null argument");
    *json = nullptr;
    const int d = degree < 0 ? nctrace::default_degree(p->value) : degree;
    const nctrace::WitnessSearch s = nctrace::dual_witness(p->value, d, radius, tol);
    *found = s.witness ? 1 : 0;
    if (optimum != nullptr) *optimum = s.optimum;
    if (s.witness) *json = copy_string(nctrace::witness_to_json(*s.witness));
  });
}

nct_status nct_falsify(const nct_poly* p, long trials, int size, double radius, uint64_t seed, int* found,
                       double* trace, char** json) {
  return guard([&] {
    require(p != nullptr && found != nullptr && json != nullptr, "nct_falsify: null argument");
    const nctrace::FalsifyResult r = nctrace::falsify(p->value, trials, size, radius, seed);
    *found = r.tuple ? 1 : 0;
    if (trace != nullptr) *trace = r.trace;
    *json = copy_string(nctrace::falsify_to_json(r));
  });
}

nct_status nct_gns_build(const nct_moments* t, int degree, double rank_tol, nct_gns** out) {
  return guard([&] {
    require(t != nullptr && out != nullptr, "nct_gns_build: null argument");
    *out = nullptr;
    const double tol = rank_tol > 0.0 ? rank_tol : nctrace::kDefaultRankTolerance;
    *out = new nct_gns{nctrace::gns_build(t->value, degree, tol)};
  });
}

void nct_gns_free(nct_gns* m) { delete m; }

int nct_gns_rank(const nct_gns* m) { return m ? m->value.rank : 0; }

nct_status nct_gns_verify_moments(const nct_gns* m, const nct_moments* t, int deg_check, double* error) {
  return guard([&] {
    require(m != nullptr && t != nullptr && error != nullptr, "nct_gns_verify_moments: null argument");
    *error = nctrace::verify_moments(m->value, t->value, deg_check);
  });
}

nct_status nct_gns_verify_trace(const nct_gns* m, const nct_moments* t, int deg_check, double* error) {
  return guard([&] {
    require(m != nullptr && t != nullptr && error != nullptr, "nct_gns_verify_trace: null argument");
    *error = nctrace::verify_trace_property(m->value, t->value, deg_check);
  });
}

nct_status nct_gns_unitary(const nct_gns* m, int j, double t, double* buffer, size_t len) {
  return guard([&] {
    require(m != nullptr && buffer != nullptr, "nct_gns_unitary: null argument");
    const auto r = static_cast<size_t>(m->value.rank);
    require(len >= 2 * r * r, "nct_gns_unitary: buffer too small");
    const nctrace::CMatrix u = nctrace::unitary_group(m->value, j, t);
    for (size_t i = 0; i < r; ++i) {
      for (size_t k = 0; k < r; ++k) {
        const auto v = u(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
        buffer[2 * (i * r + k)] = v.real();
        buffer[2 * (i * r + k) + 1] = v.imag();
      }
    }
  });
}

namespace {

nlohmann::ordered_json norm_report_json(const nctrace::NormBoundReport& r, double radius) {
  nlohmann::ordered_json doc;
  doc["pass"] = r.pass();
  doc["R"] = radius;
  doc["moments_ok"] = r.moments_ok;
  doc["operators_ok"] = r.operators_ok;
  doc["worst_moment_ratio"] = r.worst_moment_ratio;
  doc["worst_word"] = nlohmann::ordered_json::array();
  for (auto l : r.worst_word) doc["worst_word"].push_back(static_cast<int>(l));
  doc["operator_norms"] = r.operator_norms;
  doc["slack"] = r.slack;
  return doc;
}

}  // namespace

nct_status nct_gns_norm_check(const nct_gns* m, const nct_moments* t, double radius, int* pass, char** report_json) {
  return guard([&] {
    require(m != nullptr && t != nullptr && pass != nullptr, "nct_gns_norm_check: null argument");
    const nctrace::NormBoundReport r = nctrace::norm_bound_check(m->value, t->value, radius);
    *pass = r.pass() ? 1 : 0;
    if (report_json != nullptr) *report_json = copy_string(norm_report_json(r, radius).dump(2) + "\n");
  });
}

nct_status nct_gns_to_json(const nct_gns* m, char** out) {
  return guard([&] {
    require(m != nullptr && out != nullptr, "nct_gns_to_json: null argument");
    *out = copy_string(nctrace::gns_to_json(m->value));
  });
}

nct_status nct_gns_check_json(const nct_gns* m, const nct_moments* t, double radius, int* pass, char** json) {
  constexpr double kMomentTolerance = 1e-8;
  constexpr double kGroupTolerance = 1e-10;
  return guard([&] {
    require(m != nullptr && t != nullptr && pass != nullptr && json != nullptr, "nct_gns_check_json: null argument");
    const nctrace::GnsModel& model = m->value;
    const int deg_check = std::min(2 * model.degree, t->value.max_degree());
    const double moment_error = nctrace::verify_moments(model, t->value, deg_check);
    const double trace_error = nctrace::verify_trace_property(model, t->value, deg_check);

    const double grid[] = {0.1, 1.0, 10.0};
    double group_error = 0.0;
    double unitary_error = 0.0;
    const auto r = static_cast<Eigen::Index>(model.rank);
    const nctrace::CMatrix id = nctrace::CMatrix::Identity(r, r);
    for (int j = 1; j <= model.nvars; ++j) {
      for (double a : grid) {
        const nctrace::CMatrix ua = nctrace::unitary_group(model, j, a);
        unitary_error = std::max(unitary_error, (ua.adjoint() * ua - id).norm());
        for (double b : grid) {
          const nctrace::CMatrix diff =
              ua * nctrace::unitary_group(model, j, b) - nctrace::unitary_group(model, j, a + b);
          group_error = std::max(group_error, diff.norm());
        }
      }
    }
    const nctrace::NormBoundReport norms = nctrace::norm_bound_check(model, t->value, radius);

    const bool ok = moment_error <= kMomentTolerance && trace_error <= kMomentTolerance &&
                    group_error <= kGroupTolerance && unitary_error <= kGroupTolerance && norms.pass();
    *pass = ok ? 1 : 0;

    nlohmann::ordered_json doc;
    doc["pass"] = ok;
    nlohmann::ordered_json checks;
    checks["deg_check"] = deg_check;
    checks["moments_error"] = moment_error;
    checks["trace_error"] = trace_error;
    checks["group_law_error"] = group_error;
    checks["unitary_error"] = unitary_error;
    checks["norm_bound"] = norm_report_json(norms, radius);
    doc["checks"] = std::move(checks);
    doc["model"] = nlohmann::ordered_json::parse(nctrace::gns_to_json(model));
    *json = copy_string(doc.dump(2) + "\n");
  });
}

}  // extern "C"
