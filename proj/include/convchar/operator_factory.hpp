#pragma once

#include <cstdint>

#include "convchar/characterizer.hpp"

namespace convchar {

/// Row phi is conj(chi_{theta(phi)}) (Fourier) or c_{theta(phi)} (cosine); zero if annihilated.
MultiplicativeOperator build_from_theta(const FiniteAbelianGroup& g, TransformKind kind,
                                        const ThetaAssignment& theta);

/// kernel(y, u_i) = exp(-z(y) u_i), zero rows for annihilated entries.
LaplaceOperatorKernel build_laplace_from_exponents(const HalfLineGrid& grid,
                                                   std::vector<double> y_samples,
                                                   const ThetaAssignment& z_of_y);

/// Adds complex noise of modulus <= epsilon to every kernel entry, deterministic per seed.
MultiplicativeOperator perturb(const MultiplicativeOperator& op, double epsilon, std::uint64_t seed);

enum class ThetaShape { Permutation, NonInjective, PartiallyAnnihilated };

const char* to_string(ThetaShape shape);

ThetaAssignment identity_theta(std::size_t size);
ThetaAssignment annihilated_theta(std::size_t size);
ThetaAssignment constant_theta(std::size_t size, std::size_t target);

/// Random assignment over an index set of `size` entries:
///   Permutation           a bijection;
///   NonInjective          a map with at least one collision (when size >= 2);
///   PartiallyAnnihilated  a map with at least one annihilated entry.
ThetaAssignment random_theta(std::size_t size, ThetaShape shape, std::uint64_t seed);

/// Number of theta entries (and kernel rows) for an operator of this kind.
std::size_t theta_size(const FiniteAbelianGroup& g, TransformKind kind);

SpectrumIndex output_index_for(TransformKind kind);

}  // namespace convchar
