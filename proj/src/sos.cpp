#include "nctrace/sos.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "nctrace/errors.hpp"
#include "nctrace/rng.hpp"

namespace nctrace {

namespace {

constexpr double kSymmetryTolerance = 1e-10;

void require_symmetric(const NCPoly& p) {
  if (!is_symmetric(p, kSymmetryTolerance)) throw Error(ErrorCode::NotSymmetric, "polynomial is not self-adjoint");
}

void require_degree(const NCPoly& p, int degree) {
  if (degree < 0) throw Error(ErrorCode::InvalidArgument, "relaxation degree must be nonnegative");
  if (p.degree() > 2 * degree) {
    throw Error(ErrorCode::Degree, "polynomial degree " + std::to_string(p.degree()) + " exceeds 2d = " +
                                       std::to_string(2 * degree));
  }
}

Word class_of(const Word& w) { return cyclic_canonical(w).representative; }

}  // namespace

int default_degree(const NCPoly& p) { return (p.degree() + 1) / 2; }

GramProblem build_gram_problem(const NCPoly& p, int degree) {
  require_symmetric(p);
  require_degree(p, degree);
  GramProblem problem;
  problem.nvars = p.nvars();
  problem.degree = degree;
  problem.basis = words_up_to(p.nvars(), degree);

  std::map<Word, std::size_t> slot;
  auto constraint_for = [&](const Word& rep) -> GramConstraint& {
    auto [it, inserted] = slot.emplace(rep, problem.constraints.size());
    if (inserted) {
      GramConstraint c;
      c.class_rep = rep;
      c.self_reversed = class_of(involute_word(rep)) == rep;
      c.rhs = 0.0;
      problem.constraints.push_back(std::move(c));
    }
    return problem.constraints[it->second];
  };

  const int m = problem.dim();
  for (int j = 0; j < m; ++j) {
    const Word left = involute_word(problem.basis[static_cast<std::size_t>(j)]);
    for (int k = 0; k < m; ++k) {
      constraint_for(class_of(concat(left, problem.basis[static_cast<std::size_t>(k)]))).entries.emplace_back(j, k);
    }
  }
  // Every word of p has length <= 2d, so its class is already present.
  const NCPoly reduced = cyclic_reduce(p);
  for (const auto& [w, c] : reduced.terms()) constraint_for(w).rhs += c;

  for (const auto& c : problem.constraints) {
    if (c.self_reversed && std::abs(c.rhs.imag()) > kSymmetryTolerance) {
      throw Error(ErrorCode::NotSymmetric, "class " + c.class_rep.to_string() + " has a non-real sum");
    }
  }
  return problem;
}

AffineConstraints GramProblem::to_affine() const {
  AffineConstraints out(dim());
  for (const auto& c : constraints) {
    if (c.self_reversed) {
      SparseHermitian a(dim());
      for (auto [j, k] : c.entries) {
        if (j <= k) a.add(j, k, 1.0);
      }
      out.add(std::move(a), c.rhs.real());
      continue;
    }
    // The reversed class carries the conjugate equation; emit the pair once.
    if (class_of(involute_word(c.class_rep)) < c.class_rep) continue;
    SparseHermitian re(dim());
    SparseHermitian im(dim());
    for (auto [j, k] : c.entries) {
      re.add(j, k, 1.0);
      im.add(j, k, cplx{0.0, 1.0});
    }
    out.add(std::move(re), 2.0 * c.rhs.real());
    out.add(std::move(im), 2.0 * c.rhs.imag());
  }
  return out;
}

const char* to_string(CertifyStatus status) {
  switch (status) {
    case CertifyStatus::Certified: return "certified";
    case CertifyStatus::Infeasible: return "infeasible";
    case CertifyStatus::SolverFailure: return "solver-failure";
  }
  return "unknown";
}

double verify_certificate(const NCPoly& p, const std::vector<NCPoly>& factors) {
  NCPoly diff = p;
  for (const auto& b : factors) diff -= star_product(involute_poly(b), b);
  return r_norm(cyclic_reduce(diff), 1.0);
}

namespace {

// G = sum lambda v v*, b_s = sqrt(lambda) sum_K conj(v_K) Y_K, so that
// sum_s conj(b_sJ) b_sK = G_JK matches the coefficient of Y_{J^op K}.
std::vector<NCPoly> extract_factors(const CMatrix& g, const std::vector<Word>& basis, int nvars, double cutoff) {
  if (g.rows() == 0) return {};
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (g + g.adjoint()));
  const auto& lambda = es.eigenvalues();
  const double lmax = lambda.size() ? lambda.maxCoeff() : 0.0;
  std::vector<NCPoly> factors;
  if (lmax <= 0.0) return factors;
  for (Eigen::Index s = lambda.size() - 1; s >= 0; --s) {
    if (lambda(s) <= cutoff * lmax) break;
    const double scale = std::sqrt(lambda(s));
    NCPoly::TermMap terms;
    for (std::size_t k = 0; k < basis.size(); ++k) {
      terms[basis[k]] = scale * std::conj(es.eigenvectors()(static_cast<Eigen::Index>(k), s));
    }
    factors.emplace_back(nvars, std::move(terms));
  }
  return factors;
}

}  // namespace

GramProblem prune_forced_zeros(const GramProblem& problem) {
  const int m = problem.dim();
  double scale = 1.0;
  for (const auto& c : problem.constraints) scale = std::max(scale, std::abs(c.rhs));
  const double zero_tol = 1e-14 * scale;

  // A real constraint with zero right-hand side that only touches diagonal
  // entries forces each of them, and with it the whole row and column of a
  // PSD matrix, to vanish. Removing those words can expose further such rows.
  std::vector<bool> alive(static_cast<std::size_t>(m), true);
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& c : problem.constraints) {
      if (!c.self_reversed || std::abs(c.rhs) > zero_tol) continue;
      bool diagonal_only = true;
      bool touches_alive = false;
      for (auto [j, k] : c.entries) {
        if (!alive[static_cast<std::size_t>(j)] || !alive[static_cast<std::size_t>(k)]) continue;
        touches_alive = true;
        if (j != k) diagonal_only = false;
      }
      if (!touches_alive || !diagonal_only) continue;
      for (auto [j, k] : c.entries) {
        if (alive[static_cast<std::size_t>(j)] && alive[static_cast<std::size_t>(k)]) {
          alive[static_cast<std::size_t>(j)] = false;
          changed = true;
        }
      }
    }
  }

  GramProblem out;
  out.nvars = problem.nvars;
  out.degree = problem.degree;
  std::vector<int> index(static_cast<std::size_t>(m), -1);
  for (int j = 0; j < m; ++j) {
    if (!alive[static_cast<std::size_t>(j)]) continue;
    index[static_cast<std::size_t>(j)] = out.dim();
    out.basis.push_back(problem.basis[static_cast<std::size_t>(j)]);
  }
  for (const auto& c : problem.constraints) {
    GramConstraint r{c.class_rep, c.self_reversed, {}, c.rhs};
    for (auto [j, k] : c.entries) {
      const int a = index[static_cast<std::size_t>(j)];
      const int b = index[static_cast<std::size_t>(k)];
      if (a >= 0 && b >= 0) r.entries.emplace_back(a, b);
    }
    // An emptied row with nonzero right-hand side stays: it makes the affine
    // system inconsistent, which the solver reports as infeasible.
    if (!r.entries.empty() || std::abs(r.rhs) > zero_tol) out.constraints.push_back(std::move(r));
  }
  return out;
}

CertifyResult certify_sos(const NCPoly& p, int degree, double tol, long max_iter) {
  const GramProblem full = build_gram_problem(p, degree);
  const int m = full.dim();
  const GramProblem problem = prune_forced_zeros(full);
  CertifyResult result;
  result.degree = degree;
  result.residual_bound = 10.0 * tol * static_cast<double>(m) * static_cast<double>(m);
  if (problem.dim() == 0) {
    // Every word was pruned: p is cyclically zero or some class is left
    // without entries but with a nonzero target.
    result.solve.iterations = 0;
    result.solve.solution = CMatrix(0, 0);
    if (problem.constraints.empty()) {
      result.solve.status = SolveStatus::Feasible;
    } else {
      result.solve.status = SolveStatus::InfeasibleAtTolerance;
      result.solve.structurally_infeasible = true;
    }
  } else {
    result.solve = feasibility_solve(problem.to_affine(), problem.dim(), tol, max_iter);
  }

  switch (result.solve.status) {
    case SolveStatus::InfeasibleAtTolerance:
      result.status = CertifyStatus::Infeasible;
      result.message = "no Gram matrix at level d = " + std::to_string(degree);
      return result;
    case SolveStatus::MaxIterations:
      result.status = CertifyStatus::SolverFailure;
      result.message = "iteration limit reached before the gap closed";
      return result;
    case SolveStatus::Feasible:
      break;
  }

  for (double cutoff : {kRankCutoff, 0.0}) {
    Certificate cert;
    cert.degree = degree;
    cert.factors = extract_factors(result.solve.solution, problem.basis, p.nvars(), cutoff);
    NCPoly diff = p;
    for (const auto& b : cert.factors) diff -= star_product(involute_poly(b), b);
    cert.residual = cyclic_reduce(diff);
    cert.residual_l1 = r_norm(cert.residual, 1.0);
    if (cert.residual_l1 <= result.residual_bound) {
      result.status = CertifyStatus::Certified;
      result.certificate = std::move(cert);
      return result;
    }
    result.message = "factor residual " + std::to_string(cert.residual_l1) + " exceeds bound";
  }
  result.status = CertifyStatus::SolverFailure;
  return result;
}

// Dual side: the moment matrix of theta at level d is a Hermitian matrix whose
// (J, K) entry is theta_{J^op K}. Entries whose words are cyclically equal, or
// reversed (conjugated), share one orbit of free parameters.
namespace {

struct OrbitEntry {
  int j;
  int k;
  bool conj;  // entry equals the conjugate of the orbit value
};

struct Orbit {
  bool real_only = false;
  std::vector<OrbitEntry> entries;
};

struct WitnessLayout {
  std::vector<Word> basis;
  std::map<Word, Orbit> orbits;  // keyed by min(class, reversed class)
};

WitnessLayout witness_layout(int nvars, int degree) {
  WitnessLayout layout;
  layout.basis = words_up_to(nvars, degree);
  const int m = static_cast<int>(layout.basis.size());
  for (int j = 0; j < m; ++j) {
    const Word left = involute_word(layout.basis[static_cast<std::size_t>(j)]);
    for (int k = j; k < m; ++k) {
      const Word w = concat(left, layout.basis[static_cast<std::size_t>(k)]);
      const Word c = class_of(w);
      const Word cr = class_of(involute_word(w));
      const Word& key = std::min(c, cr);
      Orbit& orbit = layout.orbits[key];
      orbit.real_only = (c == cr);
      orbit.entries.push_back({j, k, c != key});
    }
  }
  return layout;
}

void add_re(SparseHermitian& a, const OrbitEntry& e, double sign) {
  a.add(e.j, e.k, sign * (e.j == e.k ? 1.0 : 0.5));
}

void add_im(SparseHermitian& a, const OrbitEntry& e, double sign) {
  if (e.j != e.k) a.add(e.j, e.k, cplx{0.0, sign * 0.5});
}

AffineConstraints witness_constraints(const WitnessLayout& layout) {
  const int m = static_cast<int>(layout.basis.size());
  AffineConstraints out(m);
  SparseHermitian unit(m);
  unit.add(0, 0, 1.0);
  out.add(std::move(unit), 1.0);
  for (const auto& [key, orbit] : layout.orbits) {
    const OrbitEntry& first = orbit.entries.front();
    for (std::size_t i = 1; i < orbit.entries.size(); ++i) {
      const OrbitEntry& e = orbit.entries[i];
      SparseHermitian re(m);
      add_re(re, e, 1.0);
      add_re(re, first, -1.0);
      out.add(std::move(re), 0.0);
    }
    for (std::size_t i = 0; i < orbit.entries.size(); ++i) {
      const OrbitEntry& e = orbit.entries[i];
      if (e.j == e.k) continue;
      SparseHermitian im(m);
      if (orbit.real_only) {
        add_im(im, e, 1.0);
      } else {
        if (i == 0) continue;
        add_im(im, e, e.conj ? -1.0 : 1.0);
        add_im(im, first, first.conj ? 1.0 : -1.0);
      }
      out.add(std::move(im), 0.0);
    }
  }
  return out;
}

MomentSequence theta_from_gram(const WitnessLayout& layout, const CMatrix& g, int nvars, int degree, double radius) {
  std::map<Word, cplx> value;
  for (const auto& [key, orbit] : layout.orbits) {
    cplx sum = 0.0;
    for (const auto& e : orbit.entries) {
      const cplx v = g(e.j, e.k);
      sum += e.conj ? std::conj(v) : v;
    }
    cplx avg = sum / static_cast<double>(orbit.entries.size());
    if (orbit.real_only) avg = avg.real();
    value[key] = avg;
  }
  MomentSequence theta(nvars, 2 * degree);
  const auto words = theta.words();
  auto values = theta.values();
  for (std::size_t i = 1; i < words.size(); ++i) {
    const Word c = class_of(words[i]);
    const Word cr = class_of(involute_word(words[i]));
    cplx v = c <= cr ? value.at(c) : std::conj(value.at(cr));
    const double bound = std::pow(radius, static_cast<double>(words[i].size()));
    if (std::abs(v) > bound) v *= bound / std::abs(v);
    values[i] = v;
  }
  values[0] = 1.0;
  return theta;
}

}  // namespace

WitnessSearch dual_witness(const NCPoly& p, int degree, double radius, double tol) {
  require_symmetric(p);
  require_degree(p, degree);
  if (!(radius >= 1.0)) throw Error(ErrorCode::InvalidArgument, "witness radius must be at least 1");
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");

  WitnessSearch search;
  const NCPoly reduced = cyclic_reduce(p);
  if (reduced.is_zero()) return search;

  const int n = p.nvars();
  const WitnessLayout layout = witness_layout(n, degree);
  const int m = static_cast<int>(layout.basis.size());

  // Objective weights spread each class sum evenly over the class's entries so
  // that Re<C, G> = Re pair(p, theta).
  std::map<Word, int> class_size;
  std::vector<std::vector<Word>> entry_class(static_cast<std::size_t>(m), std::vector<Word>(static_cast<std::size_t>(m)));
  for (int j = 0; j < m; ++j) {
    const Word left = involute_word(layout.basis[static_cast<std::size_t>(j)]);
    for (int k = 0; k < m; ++k) {
      Word c = class_of(concat(left, layout.basis[static_cast<std::size_t>(k)]));
      ++class_size[c];
      entry_class[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] = std::move(c);
    }
  }
  CMatrix objective = CMatrix::Zero(m, m);
  RMatrix box(m, m);
  for (int j = 0; j < m; ++j) {
    for (int k = 0; k < m; ++k) {
      const Word& c = entry_class[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
      objective(j, k) = std::conj(reduced.coeff(c) / static_cast<double>(class_size.at(c)));
      const auto len = layout.basis[static_cast<std::size_t>(j)].size() + layout.basis[static_cast<std::size_t>(k)].size();
      box(j, k) = std::pow(radius, static_cast<double>(len));
    }
  }
  objective = 0.5 * (objective + objective.adjoint());

  const AffineConstraints constraints = witness_constraints(layout);
  const double step = box.norm() / std::max(objective.norm(), 1e-300);
  const LinearMinResult min = minimize_linear(objective, constraints, box, step, tol, 400);
  search.iterations = min.iterations;

  MomentSequence theta = theta_from_gram(layout, min.solution, n, degree, radius);

  // Averaging and clamping can leave a slightly indefinite moment matrix; mix in
  // free semicircular moments (norm radius, positive definite) just enough.
  const double lambda = psd_check(moment_matrix(theta, degree), 0.0).min_eigenvalue;
  if (lambda < 0.0) {
    const MomentSequence semi = semicircular_moments(n, 2 * degree, 0.5 * radius);
    const double mu = psd_check(moment_matrix(semi, degree), 0.0).min_eigenvalue;
    const double s = std::min(1.0, -lambda / (mu - lambda) * (1.0 + 1e-9));
    auto values = theta.values();
    const auto semi_values = semi.values();
    for (std::size_t i = 0; i < values.size(); ++i) values[i] = (1.0 - s) * values[i] + s * semi_values[i];
  }

  search.optimum = pair(p, theta).real();
  if (search.optimum < -tol) {
    DualWitness w;
    w.degree = degree;
    w.radius = radius;
    w.value = search.optimum;
    w.theta = std::move(theta);
    search.witness = std::move(w);
  }
  return search;
}

WitnessCheck check_witness(const NCPoly& p, const MomentSequence& theta, int degree, double radius, double tol) {
  WitnessCheck check;
  if (theta.nvars() != p.nvars()) throw Error(ErrorCode::DimensionMismatch, "witness and polynomial disagree on nvars");
  check.membership = check_w_membership(theta, tol);
  check.psd = psd_check(moment_matrix(theta, degree), tol);
  check.normalization_error = check.membership.normalization_error;
  const auto words = theta.words();
  const auto values = theta.values();
  for (std::size_t i = 0; i < words.size(); ++i) {
    const double excess = std::abs(values[i]) - std::pow(radius, static_cast<double>(words[i].size()));
    check.box_violation = std::max(check.box_violation, excess);
  }
  check.value = pair(p, theta).real();
  check.valid = check.membership.pass() && check.psd.psd && check.normalization_error <= tol &&
                check.box_violation <= tol && check.value < 0.0;
  return check;
}

std::vector<std::pair<std::string, MatrixTuple>> structured_tuples(int nvars, int size, double radius) {
  if (nvars < 1 || size < 1) throw Error(ErrorCode::InvalidArgument, "structured_tuples: nvars and size must be positive");
  std::vector<std::pair<std::string, MatrixTuple>> out;
  auto add = [&](std::string name, std::vector<CMatrix> mats) {
    out.emplace_back(std::move(name), MatrixTuple::from_hermitian(std::move(mats)));
  };
  const CMatrix id = CMatrix::Identity(size, size);

  add("zero", std::vector<CMatrix>(static_cast<std::size_t>(nvars), CMatrix::Zero(size, size)));

  // Scalar sign patterns, +-R I.
  const int sign_bits = std::min(nvars, 6);
  for (int mask = 0; mask < (1 << sign_bits); ++mask) {
    std::vector<CMatrix> mats;
    for (int j = 0; j < nvars; ++j) {
      const bool negative = j < sign_bits && ((mask >> j) & 1);
      mats.push_back((negative ? -radius : radius) * id);
    }
    add(mask == 0 ? "identity" : "signs-" + std::to_string(mask), std::move(mats));
  }

  // Diagonal +-1 patterns: variable j flips sign every 2^j entries.
  if (size > 1) {
    std::vector<CMatrix> mats;
    for (int j = 0; j < nvars; ++j) {
      CMatrix d = CMatrix::Zero(size, size);
      for (int i = 0; i < size; ++i) d(i, i) = ((i >> std::min(j, 30)) & 1) ? -radius : radius;
      mats.push_back(std::move(d));
    }
    add("diagonal-signs", std::move(mats));
  }

  // Pauli matrices (always 2x2), extra variables zero.
  CMatrix sx = CMatrix::Zero(2, 2);
  CMatrix sz = CMatrix::Zero(2, 2);
  CMatrix sy = CMatrix::Zero(2, 2);
  sx(0, 1) = sx(1, 0) = 1.0;
  sz(0, 0) = 1.0;
  sz(1, 1) = -1.0;
  sy(0, 1) = cplx{0.0, -1.0};
  sy(1, 0) = cplx{0.0, 1.0};
  const CMatrix paulis[] = {sx, sz, sy};
  std::vector<CMatrix> mats;
  for (int j = 0; j < nvars; ++j) mats.push_back(j < 3 ? CMatrix(radius * paulis[j]) : CMatrix::Zero(2, 2));
  add("pauli", std::move(mats));
  return out;
}

FalsifyResult falsify(const NCPoly& p, long trials, int size, double radius, std::uint64_t seed) {
  require_symmetric(p);
  if (trials < 0) throw Error(ErrorCode::InvalidArgument, "trials must be nonnegative");
  if (size < 1) throw Error(ErrorCode::InvalidArgument, "matrix size must be positive");
  if (!(radius > 0.0)) throw Error(ErrorCode::InvalidArgument, "radius must be positive");

  FalsifyResult result;
  auto test = [&](const MatrixTuple& x, std::string source) {
    ++result.evaluated;
    const double trace = normalized_trace(eval(p, x)).real();
    if (trace < kFalsifyThreshold) {
      result.tuple = x;
      result.trace = trace;
      result.source = std::move(source);
      return true;
    }
    return false;
  };

  for (auto& [name, x] : structured_tuples(p.nvars(), size, radius)) {
    if (test(x, "structured:" + name)) return result;
  }
  for (long t = 0; t < trials; ++t) {
    CounterRng rng(seed, static_cast<std::uint64_t>(t));
    if (test(random_tuple(p.nvars(), size, radius, rng), "random:" + std::to_string(t))) return result;
  }
  return result;
}

}  // namespace nctrace
