#pragma once

#include <stdexcept>

#include "convchar/matrix.hpp"
#include "convchar/signal.hpp"

namespace convchar {

/// Raised by check_dalembert_lemma when the witness signal is not even.
class NotEvenError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// out[d] = sum_x f[x] conj(chi_d(x))
Spectrum fourier_transform(const Signal& f);
/// f[x] = (1/|G|) sum_d F[d] chi_d(x)
Signal inverse_fourier_transform(const Spectrum& spectrum);
/// out[x] = sum_u f[u] g[x - u]
Signal fourier_convolution(const Signal& f, const Signal& g);

/// out[c] = sum_x f[x] c(x), over the cosine class (no conjugate).
Spectrum cosine_transform(const Signal& f);
/// out[x] = sum_u f[u] (g[x + u] + g[x - u]) / 2
Signal cosine_convolution(const Signal& f, const Signal& g);

/// Kernel of the Fourier transform: row d is conj(chi_d).
ComplexMatrix fourier_matrix(const FiniteAbelianGroup& g);
/// Kernel of the cosine transform: row per orbit, entries c(x).
ComplexMatrix cosine_matrix(const FiniteAbelianGroup& g);

/// Pointwise product of two spectra over the same index set.
Spectrum pointwise_product(const Spectrum& a, const Spectrum& b);

/// || L_x g * L_y g - g * L_{x+y} g ||_inf
double check_shift_lemma(const Signal& g, const GroupElement& x, const GroupElement& y);

/// || L_y g *c L_x g - g *c (L_{x+y} g + L_{x-y} g) / 2 ||_inf for even g.
/// Throws NotEvenError if g[u] != g[-u] beyond round-off.
double check_dalembert_lemma(const Signal& g_even, const GroupElement& x, const GroupElement& y);

/// || (f *c g) *c h - f *c (g *c h) ||_inf. Reported, not asserted.
double cosine_associativity_residual(const Signal& f, const Signal& g, const Signal& h);

}  // namespace convchar
