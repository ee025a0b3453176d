// nctrace command-line front end. Talks to the library only through the C API.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "nctrace/nctrace.h"

namespace {

enum Exit : int { kSuccess = 0, kInputError = 1, kNegative = 2, kInconclusive = 3 };

struct Options {
  std::string input;
  std::optional<int> degree;
  std::optional<double> radius;
  std::optional<double> tol;
  long trials = 1000;
  int size = 4;
  std::uint64_t seed = 0;
  std::string out;
};

constexpr double kDefaultTol = 1e-9;

// Thrown for anything that maps to exit code 1.
struct InputError {
  std::string message;
};

void check(nct_status status) {
  if (status != NCT_OK) throw InputError{nct_last_error()};
}

struct StringDeleter {
  void operator()(char* s) const { nct_string_free(s); }
};
using CString = std::unique_ptr<char, StringDeleter>;

template <class T, void (*Free)(T*)>
struct HandleDeleter {
  void operator()(T* h) const { Free(h); }
};
using Poly = std::unique_ptr<nct_poly, HandleDeleter<nct_poly, nct_poly_free>>;
using Tuple = std::unique_ptr<nct_tuple, HandleDeleter<nct_tuple, nct_tuple_free>>;
using Moments = std::unique_ptr<nct_moments, HandleDeleter<nct_moments, nct_moments_free>>;
using Gns = std::unique_ptr<nct_gns, HandleDeleter<nct_gns, nct_gns_free>>;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError{"cannot open " + path};
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void emit(const Options& opt, const std::string& json) {
  if (opt.out.empty()) {
    std::cout << json;
    return;
  }
  std::ofstream out(opt.out, std::ios::binary);
  if (!out || !(out << json)) throw InputError{"cannot write " + opt.out};
}

Poly load_poly(const Options& opt) {
  const std::string text = read_file(opt.input);
  nct_poly* p = nullptr;
  check(nct_poly_parse(text.c_str(), 0, &p));
  return Poly(p);
}

int cmd_certify(const Options& opt) {
  const Poly p = load_poly(opt);
  int outcome = 0;
  char* json = nullptr;
  check(nct_certify(p.get(), opt.degree.value_or(-1), opt.tol.value_or(kDefaultTol), &outcome, &json));
  const CString owned(json);
  emit(opt, json);
  switch (outcome) {
    case NCT_CERTIFIED: return kSuccess;
    case NCT_INFEASIBLE: return kNegative;
    default: return kInconclusive;
  }
}

int cmd_witness(const Options& opt) {
  const Poly p = load_poly(opt);
  int found = 0;
  double optimum = 0.0;
  char* json = nullptr;
  const int degree = opt.degree.value_or((nct_poly_degree(p.get()) + 1) / 2);
  check(nct_dual_witness(p.get(), degree, opt.radius.value_or(1.0), opt.tol.value_or(kDefaultTol), &found, &optimum,
                         &json));
  const CString owned(json);
  if (found) {
    emit(opt, json);
    return kNegative;
  }
  nlohmann::ordered_json doc;
  doc["found"] = false;
  doc["degree"] = 2 * degree;
  doc["R"] = opt.radius.value_or(1.0);
  doc["optimum"] = optimum;
  emit(opt, doc.dump(2) + "\n");
  return kSuccess;
}

int cmd_falsify(const Options& opt) {
  const Poly p = load_poly(opt);
  int found = 0;
  double trace = 0.0;
  char* json = nullptr;
  check(nct_falsify(p.get(), opt.trials, opt.size, opt.radius.value_or(1.0), opt.seed, &found, &trace, &json));
  const CString owned(json);
  emit(opt, json);
  return found ? kNegative : kSuccess;
}

Tuple load_tuple(const std::string& text) {
  nct_tuple* x = nullptr;
  check(nct_tuple_from_json(text.c_str(), &x));
  return Tuple(x);
}

int cmd_moments(const Options& opt) {
  const Tuple x = load_tuple(read_file(opt.input));
  nct_moments* t = nullptr;
  check(nct_moments_from_tuple(x.get(), opt.degree.value_or(4), &t));
  const Moments owned_t(t);
  char* json = nullptr;
  check(nct_moments_to_json(t, &json));
  const CString owned(json);
  emit(opt, json);
  return kSuccess;
}

int cmd_gns_check(const Options& opt) {
  const std::string text = read_file(opt.input);
  nlohmann::json probe;
  try {
    probe = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError{std::string("invalid JSON: ") + e.what()};
  }

  Moments t;
  int degree = 0;
  double radius = opt.radius.value_or(1.0);
  if (probe.is_object() && probe.contains("matrices")) {
    const Tuple x = load_tuple(text);
    degree = opt.degree.value_or(2);
    if (!opt.radius) radius = nct_tuple_max_norm(x.get());
    nct_moments* raw = nullptr;
    check(nct_moments_from_tuple(x.get(), 2 * degree, &raw));
    t.reset(raw);
  } else {
    nct_moments* raw = nullptr;
    check(nct_moments_from_json(text.c_str(), &raw));
    t.reset(raw);
    degree = opt.degree.value_or(nct_moments_max_degree(raw) / 2);
  }

  nct_gns* raw_model = nullptr;
  check(nct_gns_build(t.get(), degree, opt.tol.value_or(0.0), &raw_model));
  const Gns model(raw_model);
  int pass = 0;
  char* json = nullptr;
  check(nct_gns_check_json(model.get(), t.get(), radius, &pass, &json));
  const CString owned(json);
  emit(opt, json);
  return pass ? kSuccess : kNegative;
}

int cmd_norm(const Options& opt) {
  const Poly p = load_poly(opt);
  const double radius = opt.radius.value_or(1.0);
  double value = 0.0;
  check(nct_poly_r_norm(p.get(), radius, &value));
  nlohmann::ordered_json doc;
  doc["R"] = radius;
  doc["r_norm"] = value;
  emit(opt, doc.dump(2) + "\n");
  return kSuccess;
}

void add_common(CLI::App* sub, Options& opt, const std::string& input_help) {
  sub->add_option("input", opt.input, input_help)->required();
  sub->add_option("--out", opt.out, "Write JSON here instead of standard output");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trace positivity certificates, dual witnesses and GNS checks for noncommutative polynomials"};
  app.require_subcommand(1);
  Options opt;

  auto* certify = app.add_subcommand("certify", "Search for a sum-of-hermitian-squares certificate (exit 2: infeasible)");
  add_common(certify, opt, "Polynomial file");
  certify->add_option("--degree", opt.degree, "Relaxation degree d (default ceil(deg p / 2))")->check(CLI::NonNegativeNumber);
  certify->add_option("--tol", opt.tol, "Solver tolerance (default 1e-9)")->check(CLI::PositiveNumber);

  auto* witness = app.add_subcommand("witness", "Search for a pseudo-moment witness (exit 2: witness found)");
  add_common(witness, opt, "Polynomial file");
  witness->add_option("--degree", opt.degree, "Relaxation degree d (default ceil(deg p / 2))")->check(CLI::NonNegativeNumber);
  witness->add_option("--radius", opt.radius, "Box radius R >= 1 (default 1)");
  witness->add_option("--tol", opt.tol, "Tolerance (default 1e-9)")->check(CLI::PositiveNumber);

  auto* falsify = app.add_subcommand("falsify", "Look for matrices with negative normalized trace (exit 2: found)");
  add_common(falsify, opt, "Polynomial file");
  falsify->add_option("--trials", opt.trials, "Random trials after the structured library (default 1000)")
      ->check(CLI::NonNegativeNumber);
  falsify->add_option("--size", opt.size, "Matrix size N (default 4)")->check(CLI::PositiveNumber);
  falsify->add_option("--radius", opt.radius, "Norm bound R (default 1)")->check(CLI::PositiveNumber);
  falsify->add_option("--seed", opt.seed, "Random seed (default 0)");

  auto* moments = app.add_subcommand("moments", "Normalized trace moments of a matrix tuple");
  add_common(moments, opt, "Matrix tuple JSON file");
  moments->add_option("--degree", opt.degree, "Largest word length D (default 4)")->check(CLI::NonNegativeNumber);

  auto* gns = app.add_subcommand("gns-check", "Build and verify a truncated GNS model (exit 2: a check failed)");
  add_common(gns, opt, "Matrix tuple or moment JSON file");
  gns->add_option("--degree", opt.degree, "Model degree d (default 2 for tuples, floor(D/2) for moments)")
      ->check(CLI::PositiveNumber);
  gns->add_option("--radius", opt.radius, "Norm bound (default: largest matrix norm for tuples, 1 for moments)")
      ->check(CLI::PositiveNumber);
  gns->add_option("--tol", opt.tol, "Rank tolerance (default 1e-8)")->check(CLI::PositiveNumber);

  auto* norm = app.add_subcommand("norm", "Weighted l1 norm sum |a_I| R^|I|");
  add_common(norm, opt, "Polynomial file");
  norm->add_option("--radius", opt.radius, "R (default 1)")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (certify->parsed()) return cmd_certify(opt);
    if (witness->parsed()) return cmd_witness(opt);
    if (falsify->parsed()) return cmd_falsify(opt);
    if (moments->parsed()) return cmd_moments(opt);
    if (gns->parsed()) return cmd_gns_check(opt);
    if (norm->parsed()) return cmd_norm(opt);
  } catch (const InputError& e) {
    std::cerr << "nctrace: " << e.message << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "nctrace: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
