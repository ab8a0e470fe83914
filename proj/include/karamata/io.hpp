#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "karamata/operator_calculus.hpp"
#include "karamata/verification.hpp"

namespace karamata {

using Json = nlohmann::ordered_json;

/// {dim, re, im} with row-major real and imaginary parts.
Json matrix_to_json(const HermitianMatrix& a);
HermitianMatrix matrix_from_json(const Json& j);
HermitianMatrix read_matrix_file(const std::string& path);

Json to_json(const ParamRecord& ctx);
Json to_json(const InequalityVerdict& v);
/// elapsed_ms is only written when with_timing is set, so that reports of
/// identical runs compare equal byte for byte.
Json to_json(const TrialReport& r, bool with_timing = false);

/// Per-trial CSV: suite_id, trial, margin, pass, dim, r, alpha, eps, seed.
std::string csv_header();
std::string csv_row(const TrialRecord& rec);

/// Shortest decimal that round-trips; "nan", "inf" and "-inf" otherwise.
std::string format_csv_real(double v);

}  // namespace karamata
