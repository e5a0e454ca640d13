#include "convchar/operator_factory.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "convchar/random.hpp"

namespace convchar {

SpectrumIndex output_index_for(TransformKind kind) {
    return kind == TransformKind::Fourier ? SpectrumIndex::Dual : SpectrumIndex::Cosine;
}

std::size_t theta_size(const FiniteAbelianGroup& g, TransformKind kind) {
    return spectrum_size(g, output_index_for(kind));
}

MultiplicativeOperator build_from_theta(const FiniteAbelianGroup& g, TransformKind kind,
                                        const ThetaAssignment& theta) {
    const SpectrumIndex index = output_index_for(kind);
    validate_theta(theta, g, index);
    const auto reps = cosine_orbit_representatives(g);
    ComplexMatrix kernel(theta.size(), g.order());
    for (std::size_t r = 0; r < theta.size(); ++r) {
        const auto* target = std::get_if<IndexTarget>(&theta[r]);
        if (!target) continue;
        for (std::size_t x = 0; x < g.order(); ++x) {
            kernel(r, x) = kind == TransformKind::Fourier ? std::conj(g.character(target->index, x))
                                                          : complex{g.cosine(reps[target->index], x)};
        }
    }
    return MultiplicativeOperator(g, index, std::move(kernel));
}

LaplaceOperatorKernel build_laplace_from_exponents(const HalfLineGrid& grid,
                                                   std::vector<double> y_samples,
                                                   const ThetaAssignment& z_of_y) {
    validate_theta(z_of_y, y_samples.size());
    ComplexMatrix kernel(y_samples.size(), grid.count());
    for (std::size_t r = 0; r < z_of_y.size(); ++r) {
        const auto* target = std::get_if<ExponentTarget>(&z_of_y[r]);
        if (!target) continue;
        for (std::size_t i = 0; i < grid.count(); ++i) kernel(r, i) = std::exp(-target->z * grid.node(i));
    }
    return LaplaceOperatorKernel(grid, std::move(y_samples), std::move(kernel));
}

MultiplicativeOperator perturb(const MultiplicativeOperator& op, double epsilon, std::uint64_t seed) {
    if (!(epsilon >= 0.0)) throw std::invalid_argument("perturb: epsilon must be >= 0");
    Rng rng(seed);
    ComplexMatrix kernel = op.kernel();
    for (complex& v : kernel.data()) {
        const double radius = epsilon * rng.unit();
        const double angle = 2.0 * std::numbers::pi * rng.unit();
        v += std::polar(radius, angle);
    }
    return MultiplicativeOperator(op.group(), op.output_index(), std::move(kernel));
}

const char* to_string(ThetaShape shape) {
    switch (shape) {
        case ThetaShape::Permutation: return "permutation";
        case ThetaShape::NonInjective: return "non-injective";
        case ThetaShape::PartiallyAnnihilated: return "partially-annihilated";
    }
    return "unknown";
}

ThetaAssignment identity_theta(std::size_t size) {
    ThetaAssignment theta;
    for (std::size_t i = 0; i < size; ++i) theta.targets.emplace_back(IndexTarget{i});
    return theta;
}

ThetaAssignment annihilated_theta(std::size_t size) {
    return ThetaAssignment{std::vector<ThetaTarget>(size, Annihilated{})};
}

ThetaAssignment constant_theta(std::size_t size, std::size_t target) {
    return ThetaAssignment{std::vector<ThetaTarget>(size, IndexTarget{target})};
}

ThetaAssignment random_theta(std::size_t size, ThetaShape shape, std::uint64_t seed) {
    Rng rng(seed);
    ThetaAssignment theta;
    if (size == 0) return theta;
    switch (shape) {
        case ThetaShape::Permutation: {
            std::vector<std::size_t> perm(size);
            std::iota(perm.begin(), perm.end(), std::size_t{0});
            for (std::size_t i = size; i-- > 1;) std::swap(perm[i], perm[rng.below(i + 1)]);
            for (std::size_t p : perm) theta.targets.emplace_back(IndexTarget{p});
            break;
        }
        case ThetaShape::NonInjective: {
            for (std::size_t i = 0; i < size; ++i) theta.targets.emplace_back(IndexTarget{rng.below(size)});
            if (size >= 2) {
                // Force a collision between two distinct rows.
                const std::size_t a = rng.below(size);
                std::size_t b = rng.below(size - 1);
                if (b >= a) ++b;
                theta.targets[b] = theta.targets[a];
            }
            break;
        }
        case ThetaShape::PartiallyAnnihilated: {
            for (std::size_t i = 0; i < size; ++i) {
                if (rng.coin(1.0 / 3.0)) {
                    theta.targets.emplace_back(Annihilated{});
                } else {
                    theta.targets.emplace_back(IndexTarget{rng.below(size)});
                }
            }
            theta.targets[rng.below(size)] = Annihilated{};
            break;
        }
    }
    return theta;
}

}  // namespace convchar
