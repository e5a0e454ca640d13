#include "convchar/identities.hpp"

#include <algorithm>

#include "convchar/random.hpp"
#include "convchar/signal.hpp"
#include "convchar/transforms.hpp"

namespace convchar {

namespace {

double spectrum_residual(const Spectrum& lhs, const Spectrum& rhs) {
    return max_abs_diff(lhs.values(), rhs.values());
}

std::vector<std::pair<std::size_t, std::size_t>> lemma_pairs(const FiniteAbelianGroup& g, Rng& rng) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    if (g.order() <= kExhaustivePairsMaxOrder) {
        for (std::size_t x = 0; x < g.order(); ++x)
            for (std::size_t y = 0; y < g.order(); ++y) pairs.emplace_back(x, y);
    } else {
        for (std::size_t i = 0; i < kSampledPairs; ++i) pairs.emplace_back(rng.below(g.order()), rng.below(g.order()));
    }
    return pairs;
}

}  // namespace

bool IdentitySuite::pass() const {
    const bool all = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.pass; });
    return all && evenness_precondition_enforced.value_or(true);
}

IdentitySuite verify_identities(const FiniteAbelianGroup& g, std::size_t trials, std::uint64_t seed) {
    IdentitySuite suite{g.spec(), trials, seed, {}, std::nullopt};

    double fourier_theorem = 0.0, cosine_theorem = 0.0, shift_lemma = 0.0, dalembert_lemma = 0.0;
    double inversion = 0.0, commutativity = 0.0, associativity = 0.0, cosine_assoc = 0.0;
    Rng pair_rng(derive_seed(seed, 0xC0FFEE));

    for (std::size_t t = 0; t < trials; ++t) {
        const Signal f = random_signal(g, derive_seed(seed, 3 * t));
        const Signal h = random_signal(g, derive_seed(seed, 3 * t + 1));
        const Signal k = random_signal(g, derive_seed(seed, 3 * t + 2));
        const double scale2 = 1.0 + l1_norm(f) * l1_norm(h);
        const double scale3 = 1.0 + l1_norm(f) * l1_norm(h) * l1_norm(k);

        fourier_theorem = std::max(
            fourier_theorem,
            spectrum_residual(fourier_transform(fourier_convolution(f, h)),
                              pointwise_product(fourier_transform(f), fourier_transform(h))) / scale2);
        cosine_theorem = std::max(
            cosine_theorem,
            spectrum_residual(cosine_transform(cosine_convolution(f, h)),
                              pointwise_product(cosine_transform(f), cosine_transform(h))) / scale2);

        inversion = std::max(inversion, max_abs_diff(inverse_fourier_transform(fourier_transform(f)), f));
        commutativity = std::max(commutativity,
                                 max_abs_diff(fourier_convolution(f, h), fourier_convolution(h, f)) / scale2);
        associativity = std::max(associativity,
                                 max_abs_diff(fourier_convolution(fourier_convolution(f, h), k),
                                              fourier_convolution(f, fourier_convolution(h, k))) / scale3);
        cosine_assoc = std::max(cosine_assoc, cosine_associativity_residual(f, h, k) / scale3);

        const Signal even = evenize(f);
        for (const auto& [x, y] : lemma_pairs(g, pair_rng)) {
            const GroupElement ex = g.element(x), ey = g.element(y);
            shift_lemma = std::max(shift_lemma, check_shift_lemma(f, ex, ey));
            dalembert_lemma = std::max(dalembert_lemma, check_dalembert_lemma(even, ex, ey));
        }
    }

    // A delta at a non-2-torsion element is not even and must be refused.
    for (std::size_t a = 0; a < g.order(); ++a) {
        if (g.neg_index(a) != a) {
            try {
                check_dalembert_lemma(delta_index(g, a), g.zero(), g.zero());
                suite.evenness_precondition_enforced = false;
            } catch (const NotEvenError&) {
                suite.evenness_precondition_enforced = true;
            }
            break;
        }
    }

    auto asserted = [](std::string name, double r, double tol) {
        return IdentityResult{std::move(name), r, tol, r <= tol};
    };
    suite.results = {
        asserted("fourier_convolution_theorem", fourier_theorem, kConvolutionTheoremTol),
        asserted("cosine_convolution_theorem", cosine_theorem, kConvolutionTheoremTol),
        asserted("shift_lemma", shift_lemma, kLemmaTol),
        asserted("dalembert_lemma", dalembert_lemma, kLemmaTol),
        asserted("fourier_inversion", inversion, kInversionTol),
        asserted("fourier_convolution_commutativity", commutativity, kConvolutionTheoremTol),
        asserted("fourier_convolution_associativity", associativity, kConvolutionTheoremTol),
        IdentityResult{"cosine_convolution_associativity", cosine_assoc, std::nullopt, true},
    };
    return suite;
}

}  // namespace convchar
