#pragma once

#include <string>
#include <string_view>

#include "nctrace/gns.hpp"
#include "nctrace/sos.hpp"
#include "nctrace/tuple.hpp"

namespace nctrace {

// {"n":..., "N":..., "matrices":[[[re,im], ...], ...]}, each matrix a flat
// row-major list of N*N entries. A bare number is accepted for a real entry.
MatrixTuple tuple_from_json(std::string_view text);
std::string tuple_to_json(const MatrixTuple& x);

// {"n":..., "degree":D, "theta":[{"word":[...], "re":..., "im":...}, ...]}.
// Reading also accepts witness documents; "n" defaults to the largest letter.
// Words missing from "theta" stay 0 (t_() stays 1 unless listed).
std::string moments_to_json(const MomentSequence& t);
MomentSequence moments_from_json(std::string_view text);

std::string certificate_to_json(const Certificate& cert);
// Parses the factor strings over nvars variables.
Certificate certificate_from_json(std::string_view text, int nvars);

// Infeasibility or solver-failure report for a certify run.
std::string certify_report_to_json(const CertifyResult& result);

// {"degree":2d, "R":..., "value":..., "n":..., "theta":[...]}
std::string witness_to_json(const DualWitness& w);

std::string falsify_to_json(const FalsifyResult& result);

// Rank, basis words, z0, operators as flat row-major [re,im] lists, and a
// diagnostics block.
std::string gns_to_json(const GnsModel& model);

}  // namespace nctrace
