#pragma once

#include <stdexcept>
#include <string>
#include <variant>

#include "json.hpp"

#include "convchar/characterizer.hpp"
#include "convchar/laplace.hpp"
#include "convchar/signal.hpp"

namespace convchar {

inline constexpr int kSchemaVersion = 1;

/// Malformed input file. `what()` carries the line/column or the JSON field path.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

nlohmann::json complex_to_json(complex v);
nlohmann::json complex_vector_to_json(const std::vector<complex>& values);
/// `path` names the field in error messages, e.g. "kernel[3]".
std::vector<complex> complex_vector_from_json(const nlohmann::json& j, const std::string& path);

/// Array of [re, im] pairs in canonical element order.
nlohmann::json signal_to_json(const Signal& s);
Signal signal_from_json(const FiniteAbelianGroup& g, const nlohmann::json& j);

/// Kernel file contents: a finite-group operator or a half-line operator.
using OperatorFile = std::variant<MultiplicativeOperator, LaplaceOperatorKernel>;

/// Kernel file schema (schema_version 1):
///   { "schema_version": 1, "kind": "fourier" | "cosine" | "laplace",
///     "group": "4x3",                              -- fourier / cosine
///     "grid": {"h": 0.01, "count": 2001},          -- laplace
///     "y_samples": [0.5, 1.0],                     -- laplace
///     "rows": R, "cols": C,
///     "kernel": [[[re, im], ...], ...] }           -- row-major, R rows of C pairs
nlohmann::json operator_to_json(const MultiplicativeOperator& op);
nlohmann::json operator_to_json(const LaplaceOperatorKernel& op);
OperatorFile operator_from_json(const nlohmann::json& j);

/// Parses JSON text; syntax errors are reported with line and column.
nlohmann::json parse_json_text(const std::string& text, const std::string& source);
nlohmann::json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// Theta arrays: null for annihilated, an integer index, or an exponent.
nlohmann::json theta_to_json(const ThetaAssignment& theta);
/// `exponents` selects Laplace-style entries (positive reals) over index entries.
ThetaAssignment theta_from_json(const nlohmann::json& j, bool exponents);

nlohmann::json target_to_json(const ThetaTarget& t);
nlohmann::json report_to_json(const ExtractionReport& report);
nlohmann::json study_to_json(const ConvergenceStudy& study);
std::string study_to_csv(const ConvergenceStudy& study);

}  // namespace convchar
