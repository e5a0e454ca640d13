#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "convchar/group.hpp"

namespace convchar {

struct IdentityResult {
    std::string name;
    double max_residual = 0.0;
    std::optional<double> tolerance;  // empty: reported, not asserted
    bool pass = true;
};

struct IdentitySuite {
    std::string group;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    std::vector<IdentityResult> results;
    /// Whether a non-even witness was rejected by the d'Alembert check; empty on groups
    /// where every signal is even (all elements of order <= 2).
    std::optional<bool> evenness_precondition_enforced;

    bool pass() const;
};

/// Residual tolerances of the identity suite.
inline constexpr double kConvolutionTheoremTol = 1e-9;  // scaled by 1 + |f|_1 |g|_1
inline constexpr double kLemmaTol = 1e-10;
inline constexpr double kInversionTol = 1e-9;

/// Exhaustive (x, y) sweeps for the shift and d'Alembert lemmas run up to this order;
/// larger groups use kSampledPairs random pairs per trial.
inline constexpr std::size_t kExhaustivePairsMaxOrder = 64;
inline constexpr std::size_t kSampledPairs = 64;

/// Fourier / cosine convolution theorems, the shift and d'Alembert lemmas, Fourier inversion,
/// commutativity and associativity of the Fourier convolution, and (reported only)
/// associativity of the cosine convolution, over `trials` seeded random signals.
IdentitySuite verify_identities(const FiniteAbelianGroup& g, std::size_t trials, std::uint64_t seed);

}  // namespace convchar
