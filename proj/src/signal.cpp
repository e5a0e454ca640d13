#include "convchar/signal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "convchar/random.hpp"

namespace convchar {

namespace {

void require_finite(const std::vector<complex>& values, const char* what) {
    for (const complex& v : values) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            throw std::invalid_argument(std::string(what) + " has a non-finite entry");
        }
    }
}

void require_same_group(const Signal& a, const Signal& b) {
    if (!(a.group() == b.group())) {
        throw std::invalid_argument("signals live on different groups (" + a.group().spec() +
                                    " vs " + b.group().spec() + ")");
    }
}

}  // namespace

Signal::Signal(FiniteAbelianGroup group)
    : group_(std::move(group)), values_(group_.order(), complex{}) {}

Signal::Signal(FiniteAbelianGroup group, std::vector<complex> values)
    : group_(std::move(group)), values_(std::move(values)) {
    if (values_.size() != group_.order()) {
        throw std::invalid_argument("signal length " + std::to_string(values_.size()) +
                                    " does not match group order " +
                                    std::to_string(group_.order()));
    }
    require_finite(values_, "signal");
}

Signal& Signal::operator+=(const Signal& other) {
    require_same_group(*this, other);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
    return *this;
}

Signal& Signal::operator-=(const Signal& other) {
    require_same_group(*this, other);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
    return *this;
}

Signal& Signal::operator*=(complex s) {
    for (complex& v : values_) v *= s;
    return *this;
}

std::size_t spectrum_size(const FiniteAbelianGroup& g, SpectrumIndex index) {
    return index == SpectrumIndex::Dual ? g.order() : cosine_orbit_representatives(g).size();
}

Spectrum::Spectrum(SpectrumIndex index, FiniteAbelianGroup group, std::vector<complex> values)
    : index_(index), group_(std::move(group)), values_(std::move(values)) {
    if (values_.size() != spectrum_size(group_, index_)) {
        throw std::invalid_argument("spectrum length does not match its index set");
    }
    require_finite(values_, "spectrum");
}

Signal shift_index(const Signal& s, std::size_t z) {
    const auto& g = s.group();
    std::vector<complex> out(g.order());
    for (std::size_t u = 0; u < g.order(); ++u) {
        out[u] = s[g.sub_index(u, z)];
    }
    return Signal(g, std::move(out));
}

Signal shift(const Signal& s, const GroupElement& z) {
    return shift_index(s, s.group().index_of(z));
}

Signal reflect(const Signal& s) {
    const auto& g = s.group();
    std::vector<complex> out(g.order());
    for (std::size_t u = 0; u < g.order(); ++u) {
        out[u] = s[g.neg_index(u)];
    }
    return Signal(g, std::move(out));
}

Signal evenize(const Signal& s) { return s + reflect(s); }

Signal delta_index(const FiniteAbelianGroup& g, std::size_t x) {
    if (x >= g.order()) throw std::out_of_range("delta: element index out of range");
    std::vector<complex> out(g.order());
    out[x] = 1.0;
    return Signal(g, std::move(out));
}

Signal delta(const FiniteAbelianGroup& g, const GroupElement& x) {
    return delta_index(g, g.index_of(x));
}

Signal random_signal(const FiniteAbelianGroup& g, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<complex> out(g.order());
    for (complex& v : out) {
        const double re = rng.uniform(-1.0, 1.0);
        const double im = rng.uniform(-1.0, 1.0);
        v = {re, im};
    }
    return Signal(g, std::move(out));
}

bool is_even(const Signal& s, double tol) {
    const auto& g = s.group();
    for (std::size_t u = 0; u < g.order(); ++u) {
        if (std::abs(s[u] - s[g.neg_index(u)]) > tol) return false;
    }
    return true;
}

double l1_norm(const Signal& s) {
    double total = 0.0;
    for (const complex& v : s.values()) total += std::abs(v);
    return total;
}

double max_abs_diff(const std::vector<complex>& a, const std::vector<complex>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("max_abs_diff: length mismatch");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

double max_abs_diff(const Signal& a, const Signal& b) {
    require_same_group(a, b);
    return max_abs_diff(a.values(), b.values());
}

}  // namespace convchar
