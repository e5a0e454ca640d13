#include "convchar/characterizer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "convchar/random.hpp"
#include "convchar/transforms.hpp"

namespace convchar {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string format_residual(double r) {
    std::ostringstream os;
    os.precision(6);
    os << r;
    return os.str();
}

void fail(RowDiagnostics& d, ExtractionError error, std::string stage, double residual,
          const std::string& what) {
    d.error = error;
    d.stage = std::move(stage);
    d.failing_residual = residual;
    d.message = "row " + std::to_string(d.row) + ": " + what + " (residual " +
                format_residual(residual) + ")";
}

/// Runs fn(row) for every row, possibly on several threads. Results are written by row index,
/// so the merged output never depends on scheduling.
template <class Fn>
void for_each_row(std::size_t rows, std::size_t threads, Fn&& fn) {
    if (threads <= 1 || rows < 2) {
        for (std::size_t r = 0; r < rows; ++r) fn(r);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(rows);
    {
        std::vector<std::jthread> workers;
        const std::size_t count = std::min(threads, rows);
        for (std::size_t w = 0; w < count; ++w) {
            workers.emplace_back([&] {
                for (std::size_t r = next++; r < rows; r = next++) {
                    try {
                        fn(r);
                    } catch (...) {
                        errors[r] = std::current_exception();
                    }
                }
            });
        }
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

/// Tables shared by all rows of one finite-group extraction.
struct FiniteTables {
    const FiniteAbelianGroup& group;
    ComplexMatrix reference;  // Fourier: chi_d(x); cosine: c_orbit(x)

    static FiniteTables fourier(const FiniteAbelianGroup& g) {
        ComplexMatrix t(g.order(), g.order());
        for (std::size_t d = 0; d < g.order(); ++d)
            for (std::size_t x = 0; x < g.order(); ++x) t(d, x) = g.character(d, x);
        return {g, std::move(t)};
    }
    static FiniteTables cosine(const FiniteAbelianGroup& g) { return {g, cosine_matrix(g)}; }
};

struct MatchResult {
    std::size_t best = 0;
    double best_distance = kInf;
    double runner_up = kInf;
};

MatchResult match_reference(const std::vector<complex>& chi, const ComplexMatrix& reference) {
    MatchResult m;
    for (std::size_t d = 0; d < reference.rows(); ++d) {
        double dist = 0.0;
        const auto ref = reference.row(d);
        for (std::size_t x = 0; x < chi.size() && dist < m.runner_up; ++x) {
            dist = std::max(dist, std::abs(chi[x] - ref[x]));
        }
        if (dist < m.best_distance) {
            m.runner_up = m.best_distance;
            m.best_distance = dist;
            m.best = d;
        } else if (dist < m.runner_up) {
            m.runner_up = dist;
        }
    }
    return m;
}

/// Smallest index among the entries of maximal modulus.
std::size_t argmax_modulus(std::span<const complex> row) {
    std::size_t best = 0;
    for (std::size_t x = 1; x < row.size(); ++x) {
        if (std::abs(row[x]) > std::abs(row[best])) best = x;
    }
    return best;
}

double max_modulus(std::span<const complex> row) {
    double m = 0.0;
    for (const complex& v : row) m = std::max(m, std::abs(v));
    return m;
}

bool match_stage(RowDiagnostics& d, const std::vector<complex>& chi, const ComplexMatrix& reference,
                 double tol, MatchResult& match) {
    match = match_reference(chi, reference);
    d.match_distance = match.best_distance;
    if (std::isfinite(match.runner_up)) d.runner_up_distance = match.runner_up;
    if (match.best_distance > tol) {
        fail(d, ExtractionError::AmbiguousMatch, "match", match.best_distance,
             "no reference function within tolerance of the extracted function");
        return false;
    }
    if (match.runner_up < 10.0 * tol) {
        fail(d, ExtractionError::AmbiguousMatch, "match", match.runner_up,
             "runner-up reference function is closer than 10*tol");
        return false;
    }
    return true;
}

RowDiagnostics fourier_row(const MultiplicativeOperator& op, const FiniteTables& tables,
                           std::size_t row, double tol, std::optional<std::size_t> forced) {
    const auto& g = op.group();
    const auto k = op.kernel().row(row);
    RowDiagnostics d;
    d.row = row;
    d.max_modulus = max_modulus(k);
    if (d.max_modulus <= tol) {
        d.target = Annihilated{};
        return d;
    }

    const std::size_t x0 = forced ? *forced : argmax_modulus(k);
    if (x0 >= g.order()) throw std::out_of_range("forced pivot out of range");
    if (std::abs(k[x0]) <= tol) {
        throw std::invalid_argument("forced pivot " + std::to_string(x0) + " of row " +
                                    std::to_string(row) + " has a vanishing kernel entry");
    }
    d.pivot = x0;

    // Witness g_* = delta_{x0} / k(x0), so T_phi(L_x g_*) = k(x0 + x) / k(x0).
    const std::size_t n = g.order();
    std::vector<complex> chi(n);
    for (std::size_t x = 0; x < n; ++x) chi[x] = std::conj(k[g.add_index(x0, x)] / k[x0]);

    double modulus = 0.0;
    for (const complex& c : chi) modulus = std::max(modulus, std::abs(std::abs(c) - 1.0));
    d.modulus_deviation = modulus;
    if (modulus > tol) {
        fail(d, ExtractionError::ModulusViolation, "modulus", modulus,
             "extracted function does not have unit modulus");
        return d;
    }

    double equation = 0.0;
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            equation = std::max(equation, std::abs(chi[x] * chi[y] - chi[g.add_index(x, y)]));
    d.equation_residual = equation;
    if (equation > tol) {
        fail(d, ExtractionError::CharacterEquationViolation, "character_equation", equation,
             "extracted function is not a character");
        return d;
    }

    MatchResult match;
    if (!match_stage(d, chi, tables.reference, tol, match)) return d;

    double factorization = 0.0;
    const auto ref = tables.reference.row(match.best);
    for (std::size_t x = 0; x < n; ++x)
        factorization = std::max(factorization, std::abs(k[x] - std::conj(ref[x])));
    d.factorization_residual = factorization;
    if (factorization > tol) {
        fail(d, ExtractionError::FactorizationViolation, "factorization", factorization,
             "row differs from the conjugate of the matched character");
        return d;
    }
    d.target = IndexTarget{match.best};
    return d;
}

RowDiagnostics cosine_row(const MultiplicativeOperator& op, const FiniteTables& tables,
                          std::size_t row, double tol, std::optional<std::size_t> forced) {
    const auto& g = op.group();
    const auto k = op.kernel().row(row);
    const std::size_t n = g.order();
    RowDiagnostics d;
    d.row = row;
    d.max_modulus = max_modulus(k);
    if (d.max_modulus <= tol) {
        d.target = Annihilated{};
        return d;
    }

    // Candidate pivots by descending modulus, ties by smallest index; a forced pivot goes first.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return std::abs(k[a]) > std::abs(k[b]); });
    if (forced) {
        if (*forced >= n) throw std::out_of_range("forced pivot out of range");
        order.erase(std::find(order.begin(), order.end(), *forced));
        order.insert(order.begin(), *forced);
    }

    // Even witness g_* = (delta_{x0} + delta_{-x0}) / c with c = k(x0) + k(-x0).
    std::optional<std::size_t> x0;
    complex scale{};
    for (std::size_t i = 0; i < order.size(); ++i) {
        const complex c = k[order[i]] + k[g.neg_index(order[i])];
        if (std::abs(c) > tol) {
            x0 = order[i];
            scale = c;
            d.pivot_fallback = i > 0;
            break;
        }
    }
    if (!x0) {
        fail(d, ExtractionError::EvenWitnessNotFound, "pivot", 0.0,
             "no x0 with k(x0) + k(-x0) nonzero; row is not cosine-multiplicative");
        return d;
    }
    d.pivot = *x0;
    const std::size_t neg_x0 = g.neg_index(*x0);

    std::vector<complex> chi(n);
    for (std::size_t x = 0; x < n; ++x) {
        chi[x] = (k[g.add_index(*x0, x)] + k[g.add_index(neg_x0, x)]) / scale;
    }

    double equation = 0.0;
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            equation = std::max(equation, std::abs(chi[x] * chi[y] -
                                                   0.5 * (chi[g.add_index(x, y)] + chi[g.sub_index(x, y)])));
    d.equation_residual = equation;
    if (equation > tol) {
        fail(d, ExtractionError::CharacterEquationViolation, "dalembert_equation", equation,
             "extracted function violates the d'Alembert equation");
        return d;
    }

    double evenness = 0.0;
    for (std::size_t y = 0; y < n; ++y)
        evenness = std::max(evenness, std::abs(chi[y] - 0.5 * (chi[y] + chi[g.neg_index(y)])));
    d.evenness_residual = evenness;
    if (evenness > tol) {
        fail(d, ExtractionError::CharacterEquationViolation, "evenness", evenness,
             "extracted function is not even");
        return d;
    }

    MatchResult match;
    if (!match_stage(d, chi, tables.reference, tol, match)) return d;

    double factorization = 0.0;
    const auto ref = tables.reference.row(match.best);
    for (std::size_t x = 0; x < n; ++x) factorization = std::max(factorization, std::abs(k[x] - ref[x]));
    d.factorization_residual = factorization;
    if (factorization > tol) {
        fail(d, ExtractionError::FactorizationViolation, "factorization", factorization,
             "row differs from the matched cosine function");
        return d;
    }
    d.target = IndexTarget{match.best};
    return d;
}

void finalize(ExtractionReport& report) {
    if (report.error == ExtractionError::None) {
        for (const auto& row : report.rows) {
            if (!row.ok()) {
                report.error = row.error;
                report.stage = row.stage;
                report.failing_row = row.row;
                report.failing_residual = row.failing_residual;
                report.message = row.message;
                break;
            }
        }
    }
    if (report.ok()) {
        ThetaAssignment theta;
        for (const auto& row : report.rows) theta.targets.push_back(*row.target);
        report.theta = std::move(theta);
    }
}

std::optional<std::size_t> forced_pivot(const ExtractionOptions& options, std::size_t row) {
    return row < options.forced_pivots.size() ? options.forced_pivots[row] : std::nullopt;
}

template <class RowFn>
ExtractionReport extract_finite(const MultiplicativeOperator& op, TransformKind kind, double tol,
                                const ExtractionOptions& options, RowFn&& row_fn) {
    ExtractionReport report;
    report.kind = kind == TransformKind::Fourier ? ExtractionKind::Fourier : ExtractionKind::Cosine;
    report.tolerance = tol;

    const auto check = check_multiplicativity_details(op, kind);
    report.multiplicativity_residual = check.residual;
    if (check.residual > tol) {
        // Rows are still traced so the report shows which stage each row breaks at.
        report.error = ExtractionError::NotMultiplicative;
        report.stage = "multiplicativity";
        report.failing_row = check.row;
        report.failing_residual = check.residual;
        report.message = "row " + std::to_string(check.row) +
                         ": convolution property fails on delta pair (" + std::to_string(check.x) +
                         ", " + std::to_string(check.y) + ") (residual " +
                         format_residual(check.residual) + ")";
    }

    const FiniteTables tables = kind == TransformKind::Fourier ? FiniteTables::fourier(op.group())
                                                               : FiniteTables::cosine(op.group());
    report.rows.resize(op.rows());
    for_each_row(op.rows(), options.threads, [&](std::size_t r) {
        report.rows[r] = row_fn(op, tables, r, tol, forced_pivot(options, r));
    });
    finalize(report);
    return report;
}

}  // namespace

MultiplicativeOperator::MultiplicativeOperator(FiniteAbelianGroup group, SpectrumIndex output_index,
                                               ComplexMatrix kernel)
    : group_(std::move(group)), output_index_(output_index), kernel_(std::move(kernel)) {
    const std::size_t rows = spectrum_size(group_, output_index_);
    if (kernel_.rows() != rows || kernel_.cols() != group_.order()) {
        throw std::invalid_argument("kernel shape " + std::to_string(kernel_.rows()) + "x" +
                                    std::to_string(kernel_.cols()) + " does not match expected " +
                                    std::to_string(rows) + "x" + std::to_string(group_.order()) +
                                    " for group " + group_.spec());
    }
    for (const complex& v : kernel_.data()) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::invalid_argument("kernel has a non-finite entry");
    }
}

Spectrum MultiplicativeOperator::apply(const Signal& f) const {
    if (!(f.group() == group_)) throw std::invalid_argument("operator applied to a signal on another group");
    std::vector<complex> out(rows());
    for (std::size_t r = 0; r < rows(); ++r) {
        const auto k = kernel_.row(r);
        complex acc{};
        for (std::size_t x = 0; x < k.size(); ++x) acc += k[x] * f[x];
        out[r] = acc;
    }
    return Spectrum(output_index_, group_, std::move(out));
}

LaplaceOperatorKernel::LaplaceOperatorKernel(HalfLineGrid grid, std::vector<double> y_samples,
                                             ComplexMatrix kernel)
    : grid_(grid), y_samples_(std::move(y_samples)), kernel_(std::move(kernel)) {
    if (kernel_.rows() != y_samples_.size() || kernel_.cols() != grid_.count()) {
        throw std::invalid_argument("laplace kernel shape does not match y samples x grid nodes");
    }
    for (double y : y_samples_) {
        if (!(y > 0.0) || !std::isfinite(y)) throw std::invalid_argument("y samples must be positive");
    }
    for (const complex& v : kernel_.data()) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::invalid_argument("kernel has a non-finite entry");
    }
}

std::vector<complex> LaplaceOperatorKernel::apply(const GridSignal& f) const {
    if (!(f.grid() == grid_)) throw std::invalid_argument("operator applied to a signal on another grid");
    std::vector<complex> out(rows());
    for (std::size_t r = 0; r < rows(); ++r) {
        const auto k = kernel_.row(r);
        complex acc{};
        for (std::size_t i = 0; i < k.size(); ++i) acc += grid_.weight(i) * k[i] * f[i];
        out[r] = acc;
    }
    return out;
}

bool is_annihilated(const ThetaTarget& t) { return std::holds_alternative<Annihilated>(t); }

const char* to_string(ExtractionError e) {
    switch (e) {
        case ExtractionError::None: return "None";
        case ExtractionError::NotMultiplicative: return "NotMultiplicative";
        case ExtractionError::ModulusViolation: return "ModulusViolation";
        case ExtractionError::CharacterEquationViolation: return "CharacterEquationViolation";
        case ExtractionError::AmbiguousMatch: return "AmbiguousMatch";
        case ExtractionError::FactorizationViolation: return "FactorizationViolation";
        case ExtractionError::EvenWitnessNotFound: return "EvenWitnessNotFound";
        case ExtractionError::FunctionalEquationViolation: return "FunctionalEquationViolation";
        case ExtractionError::ZeroCrossing: return "ZeroCrossing";
        case ExtractionError::NonRealKernel: return "NonRealKernel";
        case ExtractionError::NonPositiveExponent: return "NonPositiveExponent";
        case ExtractionError::FitResidualTooLarge: return "FitResidualTooLarge";
    }
    return "Unknown";
}

const char* to_string(ExtractionKind k) {
    switch (k) {
        case ExtractionKind::Fourier: return "fourier";
        case ExtractionKind::Cosine: return "cosine";
        case ExtractionKind::Laplace: return "laplace";
    }
    return "unknown";
}

MultiplicativityCheck check_multiplicativity_details(const MultiplicativeOperator& op, TransformKind kind) {
    const auto& g = op.group();
    const std::size_t n = g.order();
    MultiplicativityCheck worst;
    for (std::size_t r = 0; r < op.rows(); ++r) {
        const auto k = op.kernel().row(r);
        for (std::size_t x = 0; x < n; ++x) {
            for (std::size_t y = 0; y < n; ++y) {
                complex expected;
                if (kind == TransformKind::Fourier) {
                    // delta_x * delta_y = delta_{x+y}
                    expected = k[g.add_index(x, y)];
                } else {
                    // delta_x *c delta_y = (delta_{y-x} + delta_{y+x}) / 2
                    expected = 0.5 * (k[g.sub_index(y, x)] + k[g.add_index(y, x)]);
                }
                const double r_xy = std::abs(k[x] * k[y] - expected);
                if (r_xy > worst.residual) worst = {r_xy, r, x, y};
            }
        }
    }
    return worst;
}

double check_multiplicativity(const MultiplicativeOperator& op, TransformKind kind) {
    return check_multiplicativity_details(op, kind).residual;
}

RowDiagnostics extract_fourier_row(const MultiplicativeOperator& op, std::size_t row, double tol,
                                   std::optional<std::size_t> pivot) {
    if (row >= op.rows()) throw std::out_of_range("row out of range");
    return fourier_row(op, FiniteTables::fourier(op.group()), row, tol, pivot);
}

RowDiagnostics extract_cosine_row(const MultiplicativeOperator& op, std::size_t row, double tol,
                                  std::optional<std::size_t> pivot) {
    if (row >= op.rows()) throw std::out_of_range("row out of range");
    return cosine_row(op, FiniteTables::cosine(op.group()), row, tol, pivot);
}

ExtractionReport extract_theta_fourier(const MultiplicativeOperator& op, double tol,
                                       const ExtractionOptions& options) {
    if (op.output_index() != SpectrumIndex::Dual) {
        throw std::invalid_argument("extract_theta_fourier needs an operator indexed by the dual group");
    }
    return extract_finite(op, TransformKind::Fourier, tol, options, fourier_row);
}

ExtractionReport extract_theta_cosine(const MultiplicativeOperator& op, double tol,
                                      const ExtractionOptions& options) {
    if (op.output_index() != SpectrumIndex::Cosine) {
        throw std::invalid_argument("extract_theta_cosine needs an operator indexed by the cosine class");
    }
    return extract_finite(op, TransformKind::Cosine, tol, options, cosine_row);
}

RowDiagnostics extract_laplace_row(const LaplaceOperatorKernel& op, std::size_t row, double tol_eq,
                                   double tol_fit) {
    if (row >= op.rows()) throw std::out_of_range("row out of range");
    const auto& grid = op.grid();
    const auto k = op.kernel().row(row);
    const std::size_t n = grid.count();
    RowDiagnostics d;
    d.row = row;
    d.max_modulus = max_modulus(k);
    if (d.max_modulus <= tol_eq) {
        d.target = Annihilated{};
        return d;
    }

    // chi(u_i + u_j) = chi(u_i) chi(u_j) wherever u_i + u_j is a node.
    double equation = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; i + j < n; ++j)
            equation = std::max(equation, std::abs(k[i + j] - k[i] * k[j]));
    d.equation_residual = equation;
    if (equation > tol_eq) {
        fail(d, ExtractionError::FunctionalEquationViolation, "functional_equation", equation,
             "row violates chi(u+v) = chi(u) chi(v)");
        return d;
    }

    // Resolved nodes: the prefix before the first value at or below tol_eq. Decay below the
    // tolerance is expected; a value that reappears afterwards means chi passed through zero.
    std::size_t resolved = 0;
    while (resolved < n && std::abs(k[resolved]) > tol_eq) ++resolved;
    double min_modulus = kInf;
    for (std::size_t i = 0; i < resolved; ++i) min_modulus = std::min(min_modulus, std::abs(k[i]));
    d.min_modulus = resolved ? min_modulus : 0.0;
    for (std::size_t i = resolved; i < n; ++i) {
        if (std::abs(k[i]) > tol_eq) {
            fail(d, ExtractionError::ZeroCrossing, "zero_crossing", std::abs(k[i]),
                 "row vanishes at node " + std::to_string(resolved) + " but not at node " +
                     std::to_string(i));
            return d;
        }
    }

    double max_imag = 0.0;
    for (std::size_t i = 0; i < n; ++i) max_imag = std::max(max_imag, std::abs(k[i].imag()));
    d.max_imag = max_imag;
    if (max_imag > tol_eq) {
        fail(d, ExtractionError::NonRealKernel, "reality", max_imag, "row has non-real values");
        return d;
    }
    // A real row whose sign flips between resolved nodes passed through zero.
    for (std::size_t i = 1; i < resolved; ++i) {
        if ((k[i - 1].real() > 0.0) != (k[i].real() > 0.0)) {
            fail(d, ExtractionError::ZeroCrossing, "zero_crossing", std::abs(k[i]),
                 "real part changes sign between nodes " + std::to_string(i - 1) + " and " +
                     std::to_string(i));
            return d;
        }
    }
    for (std::size_t i = 0; i < resolved; ++i) {
        if (!(k[i].real() > 0.0)) {
            fail(d, ExtractionError::NonRealKernel, "reality", std::abs(k[i].real()),
                 "row is not positive at node " + std::to_string(i));
            return d;
        }
    }

    // Least squares -log chi(u) = z u + b over the resolved nodes.
    d.fit_nodes = resolved;
    if (resolved < 2) {
        fail(d, ExtractionError::FitResidualTooLarge, "fit", kInf,
             "fewer than two resolved nodes to fit an exponent");
        return d;
    }
    double mean_u = 0.0, mean_v = 0.0;
    std::vector<double> v(resolved);
    for (std::size_t i = 0; i < resolved; ++i) {
        v[i] = -std::log(k[i].real());
        mean_u += grid.node(i);
        mean_v += v[i];
    }
    mean_u /= static_cast<double>(resolved);
    mean_v /= static_cast<double>(resolved);
    double suu = 0.0, suv = 0.0;
    for (std::size_t i = 0; i < resolved; ++i) {
        const double du = grid.node(i) - mean_u;
        suu += du * du;
        suv += du * (v[i] - mean_v);
    }
    const double z = suv / suu;
    const double intercept = mean_v - z * mean_u;
    double fit_residual = 0.0;
    for (std::size_t i = 0; i < resolved; ++i)
        fit_residual = std::max(fit_residual, std::abs(v[i] - (z * grid.node(i) + intercept)));
    d.fit_intercept = intercept;
    d.fit_residual = fit_residual;
    if (std::abs(intercept) > tol_fit) {
        fail(d, ExtractionError::FitResidualTooLarge, "fit", std::abs(intercept),
             "fitted intercept is nonzero, so chi(0) != 1");
        return d;
    }
    if (fit_residual > tol_fit) {
        fail(d, ExtractionError::FitResidualTooLarge, "fit", fit_residual,
             "row is not an exponential e^{-zu}");
        return d;
    }
    if (!(z > 0.0)) {
        fail(d, ExtractionError::NonPositiveExponent, "fit", z, "fitted exponent is not positive");
        return d;
    }

    double factorization = 0.0;
    for (const auto& fn : TestFunction::builtins()) {
        const GridSignal f = fn.sample(grid);
        complex applied{};
        for (std::size_t i = 0; i < n; ++i) applied += grid.weight(i) * k[i] * f[i];
        factorization = std::max(factorization, std::abs(applied - laplace_transform(f, z)));
    }
    d.factorization_residual = factorization;
    if (factorization > tol_fit) {
        fail(d, ExtractionError::FactorizationViolation, "factorization", factorization,
             "T_y(f) differs from L(f)(z) on a built-in test function");
        return d;
    }
    d.target = ExponentTarget{z};
    return d;
}

ExtractionReport extract_theta_laplace(const LaplaceOperatorKernel& op, double tol_eq, double tol_fit,
                                       const ExtractionOptions& options) {
    ExtractionReport report;
    report.kind = ExtractionKind::Laplace;
    report.tolerance = tol_eq;
    report.fit_tolerance = tol_fit;
    report.rows.resize(op.rows());
    for_each_row(op.rows(), options.threads, [&](std::size_t r) {
        report.rows[r] = extract_laplace_row(op, r, tol_eq, tol_fit);
    });
    for (const auto& row : report.rows) {
        if (row.equation_residual)
            report.multiplicativity_residual = std::max(report.multiplicativity_residual, *row.equation_residual);
    }
    finalize(report);
    return report;
}

void validate_theta(const ThetaAssignment& theta, std::size_t rows) {
    if (theta.size() != rows) {
        throw std::invalid_argument("theta has " + std::to_string(theta.size()) +
                                    " entries, operator has " + std::to_string(rows) + " rows");
    }
    for (std::size_t r = 0; r < rows; ++r) {
        if (std::holds_alternative<IndexTarget>(theta[r])) {
            throw std::invalid_argument("theta entry " + std::to_string(r) +
                                        " is an index target; expected an exponent");
        }
        if (const auto* e = std::get_if<ExponentTarget>(&theta[r]); e && !(e->z > 0.0)) {
            throw std::invalid_argument("theta entry " + std::to_string(r) + " has a nonpositive exponent");
        }
    }
}

void validate_theta(const ThetaAssignment& theta, const FiniteAbelianGroup& g, SpectrumIndex index) {
    const std::size_t n = spectrum_size(g, index);
    if (theta.size() != n) {
        throw std::invalid_argument("theta has " + std::to_string(theta.size()) +
                                    " entries, index set has " + std::to_string(n));
    }
    for (std::size_t r = 0; r < n; ++r) {
        if (std::holds_alternative<ExponentTarget>(theta[r])) {
            throw std::invalid_argument("theta entry " + std::to_string(r) +
                                        " is an exponent; expected an index target");
        }
        if (const auto* t = std::get_if<IndexTarget>(&theta[r]); t && t->index >= n) {
            throw std::invalid_argument("theta entry " + std::to_string(r) + " targets index " +
                                        std::to_string(t->index) + " outside 0.." +
                                        std::to_string(n - 1));
        }
    }
}

double verify_factorization(const MultiplicativeOperator& op, const ThetaAssignment& theta,
                            std::size_t trials, std::uint64_t seed) {
    validate_theta(theta, op.group(), op.output_index());
    double worst = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        const Signal f = random_signal(op.group(), derive_seed(seed, t));
        const Spectrum applied = op.apply(f);
        const Spectrum truth = op.output_index() == SpectrumIndex::Dual ? fourier_transform(f)
                                                                       : cosine_transform(f);
        for (std::size_t r = 0; r < op.rows(); ++r) {
            const auto* target = std::get_if<IndexTarget>(&theta[r]);
            const complex expected = target ? truth[target->index] : complex{};
            worst = std::max(worst, std::abs(applied[r] - expected));
        }
    }
    return worst;
}

double verify_factorization(const LaplaceOperatorKernel& op, const ThetaAssignment& theta,
                            std::size_t trials, std::uint64_t seed) {
    validate_theta(theta, op.rows());
    const auto& grid = op.grid();
    double worst = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        Rng rng(derive_seed(seed, t));
        std::vector<complex> values(grid.count());
        for (complex& v : values) {
            const double re = rng.uniform(-1.0, 1.0);
            v = {re, rng.uniform(-1.0, 1.0)};
        }
        const GridSignal f(grid, std::move(values));
        const auto applied = op.apply(f);
        for (std::size_t r = 0; r < op.rows(); ++r) {
            const auto* target = std::get_if<ExponentTarget>(&theta[r]);
            const complex expected = target ? laplace_transform(f, target->z) : complex{};
            worst = std::max(worst, std::abs(applied[r] - expected));
        }
    }
    return worst;
}

}  // namespace convchar
