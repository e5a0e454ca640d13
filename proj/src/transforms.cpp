#include "convchar/transforms.hpp"

#include <algorithm>
#include <cmath>

namespace convchar {

namespace {

void require_same_group(const Signal& f, const Signal& g, const char* op) {
    if (!(f.group() == g.group())) {
        throw std::invalid_argument(std::string(op) + ": group mismatch (" + f.group().spec() +
                                    " vs " + g.group().spec() + ")");
    }
}

}  // namespace

Spectrum fourier_transform(const Signal& f) {
    const auto& g = f.group();
    std::vector<complex> out(g.order());
    for (std::size_t d = 0; d < g.order(); ++d) {
        complex acc{};
        for (std::size_t x = 0; x < g.order(); ++x) {
            acc += f[x] * std::conj(g.character(d, x));
        }
        out[d] = acc;
    }
    return Spectrum(SpectrumIndex::Dual, g, std::move(out));
}

Signal inverse_fourier_transform(const Spectrum& spectrum) {
    if (spectrum.index() != SpectrumIndex::Dual) {
        throw std::invalid_argument("inverse_fourier_transform: spectrum is not over the dual group");
    }
    const auto& g = spectrum.group();
    const double scale = 1.0 / static_cast<double>(g.order());
    std::vector<complex> out(g.order());
    for (std::size_t x = 0; x < g.order(); ++x) {
        complex acc{};
        for (std::size_t d = 0; d < g.order(); ++d) {
            acc += spectrum[d] * g.character(d, x);
        }
        out[x] = acc * scale;
    }
    return Signal(g, std::move(out));
}

Signal fourier_convolution(const Signal& f, const Signal& h) {
    require_same_group(f, h, "fourier_convolution");
    const auto& g = f.group();
    std::vector<complex> out(g.order());
    for (std::size_t x = 0; x < g.order(); ++x) {
        complex acc{};
        for (std::size_t u = 0; u < g.order(); ++u) {
            acc += f[u] * h[g.sub_index(x, u)];
        }
        out[x] = acc;
    }
    return Signal(g, std::move(out));
}

Spectrum cosine_transform(const Signal& f) {
    const auto& g = f.group();
    const auto reps = cosine_orbit_representatives(g);
    std::vector<complex> out(reps.size());
    for (std::size_t c = 0; c < reps.size(); ++c) {
        complex acc{};
        for (std::size_t x = 0; x < g.order(); ++x) {
            acc += f[x] * g.cosine(reps[c], x);
        }
        out[c] = acc;
    }
    return Spectrum(SpectrumIndex::Cosine, g, std::move(out));
}

Signal cosine_convolution(const Signal& f, const Signal& h) {
    require_same_group(f, h, "cosine_convolution");
    const auto& g = f.group();
    std::vector<complex> out(g.order());
    for (std::size_t x = 0; x < g.order(); ++x) {
        complex acc{};
        for (std::size_t u = 0; u < g.order(); ++u) {
            acc += f[u] * (h[g.add_index(x, u)] + h[g.sub_index(x, u)]) * 0.5;
        }
        out[x] = acc;
    }
    return Signal(g, std::move(out));
}

ComplexMatrix fourier_matrix(const FiniteAbelianGroup& g) {
    ComplexMatrix m(g.order(), g.order());
    for (std::size_t d = 0; d < g.order(); ++d) {
        for (std::size_t x = 0; x < g.order(); ++x) m(d, x) = std::conj(g.character(d, x));
    }
    return m;
}

ComplexMatrix cosine_matrix(const FiniteAbelianGroup& g) {
    const auto reps = cosine_orbit_representatives(g);
    ComplexMatrix m(reps.size(), g.order());
    for (std::size_t c = 0; c < reps.size(); ++c) {
        for (std::size_t x = 0; x < g.order(); ++x) m(c, x) = g.cosine(reps[c], x);
    }
    return m;
}

Spectrum pointwise_product(const Spectrum& a, const Spectrum& b) {
    if (a.index() != b.index() || !(a.group() == b.group())) {
        throw std::invalid_argument("pointwise_product: spectra over different index sets");
    }
    std::vector<complex> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
    return Spectrum(a.index(), a.group(), std::move(out));
}

double check_shift_lemma(const Signal& g, const GroupElement& x, const GroupElement& y) {
    const auto& grp = g.group();
    const Signal lhs = fourier_convolution(shift(g, x), shift(g, y));
    const Signal rhs = fourier_convolution(g, shift(g, grp.add(x, y)));
    return max_abs_diff(lhs, rhs);
}

double check_dalembert_lemma(const Signal& g_even, const GroupElement& x, const GroupElement& y) {
    double scale = 0.0;
    for (const complex& v : g_even.values()) scale = std::max(scale, std::abs(v));
    if (!is_even(g_even, 1e-12 * std::max(1.0, scale))) {
        throw NotEvenError("check_dalembert_lemma: witness signal is not even (g[u] != g[-u])");
    }
    const auto& grp = g_even.group();
    const Signal lhs = cosine_convolution(shift(g_even, y), shift(g_even, x));
    const Signal mean =
        0.5 * (shift(g_even, grp.add(x, y)) + shift(g_even, grp.sub(x, y)));
    const Signal rhs = cosine_convolution(g_even, mean);
    return max_abs_diff(lhs, rhs);
}

double cosine_associativity_residual(const Signal& f, const Signal& g, const Signal& h) {
    return max_abs_diff(cosine_convolution(cosine_convolution(f, g), h),
                        cosine_convolution(f, cosine_convolution(g, h)));
}

}  // namespace convchar
