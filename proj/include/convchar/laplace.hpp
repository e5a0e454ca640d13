#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "convchar/matrix.hpp"

namespace convchar {

/// Uniform nodes x_i = i h, i = 0..N-1, on the half-line.
class HalfLineGrid {
public:
    /// Throws std::invalid_argument unless h > 0 and count >= 2.
    HalfLineGrid(double step, std::size_t count);
    /// Grid with horizon as close to `horizon` as the step allows: N = round(X / h) + 1.
    static HalfLineGrid from_horizon(double step, double horizon);

    double step() const noexcept { return step_; }
    std::size_t count() const noexcept { return count_; }
    double horizon() const noexcept { return step_ * static_cast<double>(count_ - 1); }
    double node(std::size_t i) const noexcept { return step_ * static_cast<double>(i); }

    /// Trapezoid weight of node i over the whole grid: h/2 at the ends, h inside.
    double weight(std::size_t i) const noexcept {
        return (i == 0 || i + 1 == count_) ? 0.5 * step_ : step_;
    }

    friend bool operator==(const HalfLineGrid&, const HalfLineGrid&) = default;

private:
    double step_;
    std::size_t count_;
};

class GridSignal {
public:
    explicit GridSignal(HalfLineGrid grid);
    GridSignal(HalfLineGrid grid, std::vector<complex> values);

    const HalfLineGrid& grid() const noexcept { return grid_; }
    const std::vector<complex>& values() const noexcept { return values_; }
    complex operator[](std::size_t i) const { return values_[i]; }
    std::size_t size() const noexcept { return values_.size(); }

private:
    HalfLineGrid grid_;
    std::vector<complex> values_;
};

/// Trapezoidal approximation of int_0^X e^{-yx} f(x) dx. Throws for y <= 0.
complex laplace_transform(const GridSignal& f, double y);

/// out[i] = trapezoid over j = 0..i of f(x_j) g(x_{i-j}); out[0] = 0.
GridSignal laplace_convolution(const GridSignal& f, const GridSignal& g);

/// Built-in analytic functions for the convergence studies:
///   "zero", "const" (1), "exp" (e^{-x}), "exp:<a>" (e^{-a x}, a > 0),
///   "poly-cutoff" (x^2 (1-x)^2 on [0,1], zero beyond).
class TestFunction {
public:
    /// Throws std::invalid_argument for an unknown spec.
    static TestFunction parse(std::string_view spec);

    double operator()(double x) const;
    const std::string& name() const noexcept { return name_; }
    GridSignal sample(const HalfLineGrid& grid) const;

    /// The functions the Laplace extraction checks T_y(f) against.
    static std::vector<TestFunction> builtins();

private:
    enum class Shape { Zero, Constant, Exponential, PolyCutoff };
    TestFunction(std::string name, Shape shape, double rate)
        : name_(std::move(name)), shape_(shape), rate_(rate) {}

    std::string name_;
    Shape shape_;
    double rate_;
};

struct ConvergenceRow {
    double step;
    std::size_t count;
    double residual;                     // max over y
    std::vector<double> residual_by_y;
    std::optional<double> ratio;         // residual / residual at the next (finer) step
    std::optional<double> order;         // log2(ratio)
};

struct HorizonRow {
    double horizon;
    double residual;
};

struct ConvergenceStudy {
    std::string f;
    std::string g;
    std::vector<double> y;
    std::vector<ConvergenceRow> by_step;
    std::vector<HorizonRow> by_horizon;
};

/// max_y |L(f *L g)(y) - L(f)(y) L(g)(y)| on a grid of step h and horizon X.
double laplace_identity_residual(const TestFunction& f, const TestFunction& g,
                                 const std::vector<double>& y, double step, double horizon,
                                 std::vector<double>* residual_by_y = nullptr);

/// Residual per step (with observed ratio and order between consecutive steps), plus a
/// truncation table at the first step for each horizon in `horizons`.
ConvergenceStudy convergence_study(const TestFunction& f, const TestFunction& g,
                                   const std::vector<double>& y, const std::vector<double>& steps,
                                   double horizon, const std::vector<double>& horizons = {});

}  // namespace convchar
