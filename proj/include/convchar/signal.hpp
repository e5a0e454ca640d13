#pragma once

#include <cstdint>
#include <vector>

#include "convchar/group.hpp"

namespace convchar {

/// Complex function on a finite group, indexed by the canonical element order.
class Signal {
public:
    /// Zero signal.
    explicit Signal(FiniteAbelianGroup group);
    /// Throws std::invalid_argument on length mismatch or non-finite entries.
    Signal(FiniteAbelianGroup group, std::vector<complex> values);

    const FiniteAbelianGroup& group() const noexcept { return group_; }
    const std::vector<complex>& values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }

    complex operator[](std::size_t i) const { return values_[i]; }
    complex at(const GroupElement& x) const { return values_[group_.index_of(x)]; }

    Signal& operator+=(const Signal& other);
    Signal& operator-=(const Signal& other);
    Signal& operator*=(complex s);

    friend Signal operator+(Signal a, const Signal& b) { return a += b; }
    friend Signal operator-(Signal a, const Signal& b) { return a -= b; }
    friend Signal operator*(complex s, Signal a) { return a *= s; }
    friend bool operator==(const Signal&, const Signal&) = default;

private:
    FiniteAbelianGroup group_;
    std::vector<complex> values_;
};

enum class SpectrumIndex { Dual, Cosine };

/// Transform output, over enumerate_duals (Dual) or enumerate_cosine_class (Cosine).
class Spectrum {
public:
    Spectrum(SpectrumIndex index, FiniteAbelianGroup group, std::vector<complex> values);

    SpectrumIndex index() const noexcept { return index_; }
    const FiniteAbelianGroup& group() const noexcept { return group_; }
    const std::vector<complex>& values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    complex operator[](std::size_t i) const { return values_[i]; }

    friend bool operator==(const Spectrum&, const Spectrum&) = default;

private:
    SpectrumIndex index_;
    FiniteAbelianGroup group_;
    std::vector<complex> values_;
};

/// Number of entries a spectrum over `index` has for group `g`.
std::size_t spectrum_size(const FiniteAbelianGroup& g, SpectrumIndex index);

/// out[u] = s[u - z]
Signal shift(const Signal& s, const GroupElement& z);
Signal shift_index(const Signal& s, std::size_t z);
/// out[u] = s[-u]
Signal reflect(const Signal& s);
/// s + reflect(s)
Signal evenize(const Signal& s);
Signal delta(const FiniteAbelianGroup& g, const GroupElement& x);
Signal delta_index(const FiniteAbelianGroup& g, std::size_t x);

/// Real and imaginary parts independent, each uniform on [-1, 1).
Signal random_signal(const FiniteAbelianGroup& g, std::uint64_t seed);

bool is_even(const Signal& s, double tol = 0.0);

/// Sum of |values| (counting measure).
double l1_norm(const Signal& s);
double max_abs_diff(const std::vector<complex>& a, const std::vector<complex>& b);
double max_abs_diff(const Signal& a, const Signal& b);

}  // namespace convchar
