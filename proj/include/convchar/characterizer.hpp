#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "convchar/laplace.hpp"
#include "convchar/matrix.hpp"
#include "convchar/signal.hpp"

namespace convchar {

enum class TransformKind { Fourier, Cosine };

/// Linear operator L^1(G) -> functions on the dual (or cosine class), given by its kernel:
/// T(f)[phi] = sum_x kernel(phi, x) f[x]. Row phi is the functional T_phi.
class MultiplicativeOperator {
public:
    /// Throws std::invalid_argument if the kernel shape does not match the group and index set.
    MultiplicativeOperator(FiniteAbelianGroup group, SpectrumIndex output_index, ComplexMatrix kernel);

    const FiniteAbelianGroup& group() const noexcept { return group_; }
    SpectrumIndex output_index() const noexcept { return output_index_; }
    const ComplexMatrix& kernel() const noexcept { return kernel_; }
    std::size_t rows() const noexcept { return kernel_.rows(); }

    Spectrum apply(const Signal& f) const;

    friend bool operator==(const MultiplicativeOperator&, const MultiplicativeOperator&) = default;

private:
    FiniteAbelianGroup group_;
    SpectrumIndex output_index_;
    ComplexMatrix kernel_;
};

/// Operator on grid signals over the half-line: T_y(f) = trapezoid sum of kernel(y, .) f.
class LaplaceOperatorKernel {
public:
    LaplaceOperatorKernel(HalfLineGrid grid, std::vector<double> y_samples, ComplexMatrix kernel);

    const HalfLineGrid& grid() const noexcept { return grid_; }
    const std::vector<double>& y_samples() const noexcept { return y_samples_; }
    const ComplexMatrix& kernel() const noexcept { return kernel_; }
    std::size_t rows() const noexcept { return kernel_.rows(); }

    /// One value per y sample.
    std::vector<complex> apply(const GridSignal& f) const;

private:
    HalfLineGrid grid_;
    std::vector<double> y_samples_;
    ComplexMatrix kernel_;
};

struct Annihilated {
    friend bool operator==(const Annihilated&, const Annihilated&) = default;
};
/// Dual index (Fourier) or cosine-orbit index (cosine), canonical order.
struct IndexTarget {
    std::size_t index;
    friend bool operator==(const IndexTarget&, const IndexTarget&) = default;
};
/// Laplace exponent z > 0: row y acts as L(f)(z).
struct ExponentTarget {
    double z;
    friend bool operator==(const ExponentTarget&, const ExponentTarget&) = default;
};

using ThetaTarget = std::variant<Annihilated, IndexTarget, ExponentTarget>;

/// The relabeling map: one target per output index of the operator.
struct ThetaAssignment {
    std::vector<ThetaTarget> targets;

    std::size_t size() const noexcept { return targets.size(); }
    const ThetaTarget& operator[](std::size_t i) const { return targets[i]; }
    friend bool operator==(const ThetaAssignment&, const ThetaAssignment&) = default;
};

bool is_annihilated(const ThetaTarget& t);

enum class ExtractionError {
    None,
    NotMultiplicative,
    ModulusViolation,
    CharacterEquationViolation,
    AmbiguousMatch,
    FactorizationViolation,
    EvenWitnessNotFound,
    FunctionalEquationViolation,
    ZeroCrossing,
    NonRealKernel,
    NonPositiveExponent,
    FitResidualTooLarge,
};

const char* to_string(ExtractionError e);

/// Per-row trace of the constructive extraction. Stage-specific fields are empty when the
/// stage does not apply to the path or was not reached.
struct RowDiagnostics {
    std::size_t row = 0;
    std::optional<ThetaTarget> target;
    ExtractionError error = ExtractionError::None;
    std::string stage;  // failing stage, empty on success
    std::string message;
    double failing_residual = 0.0;

    double max_modulus = 0.0;
    std::optional<std::size_t> pivot;        // x0 of the realized witness
    bool pivot_fallback = false;             // cosine: max-modulus pivot gave a vanishing witness
    std::optional<double> modulus_deviation;
    std::optional<double> equation_residual;  // character / d'Alembert / exponential equation
    std::optional<double> evenness_residual;
    std::optional<double> match_distance;
    std::optional<double> runner_up_distance;
    std::optional<double> factorization_residual;
    std::optional<double> min_modulus;        // Laplace
    std::optional<double> max_imag;           // Laplace
    std::optional<double> fit_intercept;      // Laplace
    std::optional<double> fit_residual;       // Laplace
    std::optional<std::size_t> fit_nodes;     // Laplace

    bool ok() const noexcept { return error == ExtractionError::None; }
};

enum class ExtractionKind { Fourier, Cosine, Laplace };
const char* to_string(ExtractionKind k);

struct ExtractionReport {
    ExtractionKind kind = ExtractionKind::Fourier;
    double tolerance = 0.0;
    std::optional<double> fit_tolerance;
    double multiplicativity_residual = 0.0;
    std::optional<ThetaAssignment> theta;  // present iff ok()
    std::vector<RowDiagnostics> rows;

    ExtractionError error = ExtractionError::None;
    std::string stage;
    std::optional<std::size_t> failing_row;
    double failing_residual = 0.0;
    std::string message;

    bool ok() const noexcept { return error == ExtractionError::None; }
};

struct ExtractionOptions {
    /// Worker threads for per-row processing; reports are identical for any value.
    std::size_t threads = 1;
    /// Optional starting pivot per row (empty vector: max-modulus pivot everywhere).
    std::vector<std::optional<std::size_t>> forced_pivots;
};

struct MultiplicativityCheck {
    double residual = 0.0;
    std::size_t row = 0;
    std::size_t x = 0;
    std::size_t y = 0;
};

/// Residual of the convolution property on the delta basis, which is exhaustive by bilinearity.
/// Fourier: |k(x) k(y) - k(x+y)|.  Cosine: |k(x) k(y) - (k(y-x) + k(y+x)) / 2|.
MultiplicativityCheck check_multiplicativity_details(const MultiplicativeOperator& op, TransformKind kind);
double check_multiplicativity(const MultiplicativeOperator& op, TransformKind kind);

ExtractionReport extract_theta_fourier(const MultiplicativeOperator& op, double tol = 1e-8,
                                       const ExtractionOptions& options = {});
ExtractionReport extract_theta_cosine(const MultiplicativeOperator& op, double tol = 1e-8,
                                      const ExtractionOptions& options = {});
ExtractionReport extract_theta_laplace(const LaplaceOperatorKernel& op, double tol_eq = 1e-6,
                                       double tol_fit = 1e-6, const ExtractionOptions& options = {});

/// Single-row extraction; `pivot` overrides the max-modulus choice (Fourier: must not vanish;
/// cosine: starting point of the witness search).
RowDiagnostics extract_fourier_row(const MultiplicativeOperator& op, std::size_t row, double tol,
                                   std::optional<std::size_t> pivot = std::nullopt);
RowDiagnostics extract_cosine_row(const MultiplicativeOperator& op, std::size_t row, double tol,
                                  std::optional<std::size_t> pivot = std::nullopt);
RowDiagnostics extract_laplace_row(const LaplaceOperatorKernel& op, std::size_t row, double tol_eq,
                                   double tol_fit);

/// Throws std::invalid_argument unless theta has one valid target per row of the operator.
void validate_theta(const ThetaAssignment& theta, const FiniteAbelianGroup& g, SpectrumIndex index);
void validate_theta(const ThetaAssignment& theta, std::size_t rows);

/// max over `trials` random signals of |T(f)[phi] - transform(f)[theta(phi)]| (0 for annihilated).
double verify_factorization(const MultiplicativeOperator& op, const ThetaAssignment& theta,
                            std::size_t trials, std::uint64_t seed);
double verify_factorization(const LaplaceOperatorKernel& op, const ThetaAssignment& theta,
                            std::size_t trials, std::uint64_t seed);

}  // namespace convchar
