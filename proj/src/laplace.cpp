#include "convchar/laplace.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace convchar {

HalfLineGrid::HalfLineGrid(double step, std::size_t count) : step_(step), count_(count) {
    if (!(step > 0.0) || !std::isfinite(step)) {
        throw std::invalid_argument("grid step must be positive and finite");
    }
    if (count < 2) {
        throw std::invalid_argument("grid needs at least 2 nodes");
    }
}

HalfLineGrid HalfLineGrid::from_horizon(double step, double horizon) {
    if (!(step > 0.0) || !(horizon > 0.0)) {
        throw std::invalid_argument("grid step and horizon must be positive");
    }
    const auto intervals = static_cast<std::size_t>(std::llround(horizon / step));
    return HalfLineGrid(step, std::max<std::size_t>(intervals, 1) + 1);
}

GridSignal::GridSignal(HalfLineGrid grid) : grid_(grid), values_(grid.count(), complex{}) {}

GridSignal::GridSignal(HalfLineGrid grid, std::vector<complex> values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.count()) {
        throw std::invalid_argument("grid signal length does not match node count");
    }
    for (const complex& v : values_) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            throw std::invalid_argument("grid signal has a non-finite entry");
        }
    }
}

complex laplace_transform(const GridSignal& f, double y) {
    if (!(y > 0.0)) {
        throw std::invalid_argument("laplace_transform: y must be positive");
    }
    const auto& grid = f.grid();
    complex acc{};
    for (std::size_t i = 0; i < grid.count(); ++i) {
        acc += grid.weight(i) * std::exp(-y * grid.node(i)) * f[i];
    }
    return acc;
}

GridSignal laplace_convolution(const GridSignal& f, const GridSignal& g) {
    if (!(f.grid() == g.grid())) {
        throw std::invalid_argument("laplace_convolution: grid mismatch");
    }
    const auto& grid = f.grid();
    const double h = grid.step();
    std::vector<complex> out(grid.count());
    for (std::size_t i = 1; i < grid.count(); ++i) {
        complex acc = 0.5 * (f[0] * g[i] + f[i] * g[0]);
        for (std::size_t j = 1; j < i; ++j) acc += f[j] * g[i - j];
        out[i] = h * acc;
    }
    return GridSignal(grid, std::move(out));
}

TestFunction TestFunction::parse(std::string_view spec) {
    if (spec == "zero") return {"zero", Shape::Zero, 0.0};
    if (spec == "const") return {"const", Shape::Constant, 0.0};
    if (spec == "exp") return {"exp", Shape::Exponential, 1.0};
    if (spec == "poly-cutoff") return {"poly-cutoff", Shape::PolyCutoff, 0.0};
    if (spec.starts_with("exp:")) {
        const std::string rate_text(spec.substr(4));
        std::size_t used = 0;
        double rate = 0.0;
        try {
            rate = std::stod(rate_text, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == rate_text.size() && used > 0 && rate > 0.0 && std::isfinite(rate)) {
            return {std::string(spec), Shape::Exponential, rate};
        }
    }
    throw std::invalid_argument("unknown test function '" + std::string(spec) +
                                "' (expected zero, const, exp, exp:<rate>, poly-cutoff)");
}

double TestFunction::operator()(double x) const {
    switch (shape_) {
        case Shape::Zero:
            return 0.0;
        case Shape::Constant:
            return 1.0;
        case Shape::Exponential:
            return std::exp(-rate_ * x);
        case Shape::PolyCutoff:
            return x <= 1.0 ? x * x * (1.0 - x) * (1.0 - x) : 0.0;
    }
    return 0.0;
}

GridSignal TestFunction::sample(const HalfLineGrid& grid) const {
    std::vector<complex> values(grid.count());
    for (std::size_t i = 0; i < grid.count(); ++i) values[i] = (*this)(grid.node(i));
    return GridSignal(grid, std::move(values));
}

std::vector<TestFunction> TestFunction::builtins() {
    return {parse("exp"), parse("const"), parse("poly-cutoff")};
}

double laplace_identity_residual(const TestFunction& f, const TestFunction& g,
                                 const std::vector<double>& y, double step, double horizon,
                                 std::vector<double>* residual_by_y) {
    const auto grid = HalfLineGrid::from_horizon(step, horizon);
    const GridSignal fs = f.sample(grid);
    const GridSignal gs = g.sample(grid);
    const GridSignal conv = laplace_convolution(fs, gs);
    double worst = 0.0;
    if (residual_by_y) residual_by_y->clear();
    for (double yv : y) {
        const double r =
            std::abs(laplace_transform(conv, yv) - laplace_transform(fs, yv) * laplace_transform(gs, yv));
        worst = std::max(worst, r);
        if (residual_by_y) residual_by_y->push_back(r);
    }
    return worst;
}

ConvergenceStudy convergence_study(const TestFunction& f, const TestFunction& g,
                                   const std::vector<double>& y, const std::vector<double>& steps,
                                   double horizon, const std::vector<double>& horizons) {
    if (y.empty() || steps.empty()) {
        throw std::invalid_argument("convergence_study: need at least one y and one step");
    }
    ConvergenceStudy study{f.name(), g.name(), y, {}, {}};
    for (double h : steps) {
        ConvergenceRow row{};
        row.step = h;
        row.count = HalfLineGrid::from_horizon(h, horizon).count();
        row.residual = laplace_identity_residual(f, g, y, h, horizon, &row.residual_by_y);
        study.by_step.push_back(std::move(row));
    }
    for (std::size_t i = 0; i + 1 < study.by_step.size(); ++i) {
        auto& coarse = study.by_step[i];
        const auto& fine = study.by_step[i + 1];
        if (coarse.residual > 0.0 && fine.residual > 0.0) {
            coarse.ratio = coarse.residual / fine.residual;
            coarse.order = std::log2(*coarse.ratio);
        }
    }
    for (double x : horizons) {
        study.by_horizon.push_back({x, laplace_identity_residual(f, g, y, steps.front(), x)});
    }
    return study;
}

}  // namespace convchar
